#include "pmo/solver.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

namespace pmo {

namespace {

struct Entry {
  int r, c;
  double v;
};

// One internally-split PSD block (connected component of an input block).
struct Sub {
  int parent;
  int dim;
  std::vector<int> rows;                  // rows in the parent block
  std::vector<int> vars;                  // reduced variable ids
  std::vector<std::vector<Entry>> coeff;  // per local var, upper entries
  Eigen::MatrixXd C;
};

// x_pivot = rhs - sum_j coef_j x_j  (over surviving variables)
struct Substitution {
  int pivot;
  double rhs;
  std::vector<std::pair<int, double>> terms;
};

struct Presolved {
  bool inconsistent = false;
  BlockSDP sdp;                 // equality-free, compressed variables
  std::vector<int> new_of_old;  // -1 for eliminated variables
  std::vector<int> old_of_new;
  std::vector<Substitution> subs;  // old variable ids
};

// Gauss-Jordan elimination of the equality rows into explicit
// substitutions, then rewrite of the pencil in the surviving variables.
Presolved presolve_equalities(const BlockSDP& in) {
  Presolved out;
  int m = in.num_vars;
  std::vector<Eigen::VectorXd> rows;
  std::vector<double> rhs;
  for (auto& e : in.equalities) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
    for (auto& [v, c] : e.terms) r[v] += c;
    rows.push_back(r);
    rhs.push_back(e.rhs);
  }
  int nr = (int)rows.size();
  std::vector<bool> used(nr, false);
  std::vector<bool> eliminated(m, false);
  std::vector<int> pivot_of_row(nr, -1);
  std::vector<int> kept;
  for (int pass = 0; pass < nr; ++pass) {
    int best = -1, bestcol = -1;
    double bestval = 1e-10;
    for (int i = 0; i < nr; ++i) {
      if (used[i]) continue;
      int col;
      double v = rows[i].cwiseAbs().maxCoeff(&col);
      if (v > bestval) {
        bestval = v;
        best = i;
        bestcol = col;
      }
    }
    if (best < 0) break;
    used[best] = true;
    pivot_of_row[best] = bestcol;
    eliminated[bestcol] = true;
    kept.push_back(best);
    rhs[best] /= rows[best][bestcol];
    rows[best] /= rows[best][bestcol];
    for (int i = 0; i < nr; ++i) {
      if (i == best || rows[i][bestcol] == 0.0) continue;
      double f = rows[i][bestcol];
      rows[i] -= f * rows[best];
      rhs[i] -= f * rhs[best];
    }
  }
  for (int i = 0; i < nr; ++i)
    if (!used[i] && std::abs(rhs[i]) > 1e-8) out.inconsistent = true;
  if (out.inconsistent) return out;

  out.new_of_old.assign(m, -1);
  for (int v = 0; v < m; ++v)
    if (!eliminated[v]) {
      out.new_of_old[v] = (int)out.old_of_new.size();
      out.old_of_new.push_back(v);
    }
  for (int i : kept) {
    Substitution s;
    s.pivot = pivot_of_row[i];
    s.rhs = rhs[i];
    for (int v = 0; v < m; ++v)
      if (v != s.pivot && std::abs(rows[i][v]) > 1e-14) s.terms.push_back({v, rows[i][v]});
    out.subs.push_back(std::move(s));
  }

  std::vector<const Substitution*> sub_of(m, nullptr);
  for (auto& s : out.subs) sub_of[s.pivot] = &s;

  out.sdp.num_vars = (int)out.old_of_new.size();
  out.sdp.objective.assign(out.sdp.num_vars, 0.0);
  out.sdp.obj_offset = in.obj_offset;
  for (int v = 0; v < m; ++v) {
    double cv = in.objective[v];
    if (cv == 0.0) continue;
    if (!eliminated[v]) {
      out.sdp.objective[out.new_of_old[v]] += cv;
    } else {
      const Substitution* s = sub_of[v];
      out.sdp.obj_offset += cv * s->rhs;
      for (auto& [w, coef] : s->terms) out.sdp.objective[out.new_of_old[w]] -= cv * coef;
    }
  }

  for (auto& blk : in.blocks) {
    SdpBlock nb;
    nb.dim = blk.dim;
    nb.tag = blk.tag;
    std::map<std::tuple<int, int, int>, double> acc;  // (var,row,col)
    std::map<std::pair<int, int>, double> consts;
    for (auto& e : blk.constants) consts[{e.row, e.col}] += e.val;
    for (auto& e : blk.coeffs) {
      if (!eliminated[e.var]) {
        acc[{out.new_of_old[e.var], e.row, e.col}] += e.val;
      } else {
        const Substitution* s = sub_of[e.var];
        // x_p A_p = rhs A_p - sum coef_j x_j A_p
        consts[{e.row, e.col}] -= s->rhs * e.val;
        for (auto& [w, coef] : s->terms)
          acc[{out.new_of_old[w], e.row, e.col}] -= coef * e.val;
      }
    }
    for (auto& [key, val] : acc)
      if (val != 0.0)
        nb.coeffs.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), val});
    for (auto& [key, val] : consts)
      if (val != 0.0) nb.constants.push_back({key.first, key.second, val});
    out.sdp.blocks.push_back(std::move(nb));
  }
  return out;
}

std::vector<Sub> split_blocks(const BlockSDP& sdp) {
  std::vector<Sub> subs;
  for (size_t b = 0; b < sdp.blocks.size(); ++b) {
    const auto& blk = sdp.blocks[b];
    if (blk.dim == 0) continue;
    std::vector<int> parent(blk.dim);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    auto unite = [&](int a, int c) { parent[find(a)] = find(c); };
    for (auto& e : blk.coeffs)
      if (e.row != e.col) unite(e.row, e.col);
    for (auto& e : blk.constants)
      if (e.row != e.col) unite(e.row, e.col);

    std::map<int, std::vector<int>> comps;
    for (int r = 0; r < blk.dim; ++r) comps[find(r)].push_back(r);

    std::vector<Sub> local;
    std::vector<int> which(blk.dim), pos(blk.dim);
    for (auto& [root, rws] : comps) {
      Sub s;
      s.parent = (int)b;
      s.dim = (int)rws.size();
      s.rows = rws;
      s.C = Eigen::MatrixXd::Zero(s.dim, s.dim);
      for (size_t k = 0; k < rws.size(); ++k) {
        which[rws[k]] = (int)local.size();
        pos[rws[k]] = (int)k;
      }
      local.push_back(std::move(s));
    }
    for (auto& e : blk.constants) {
      Sub& s = local[which[e.row]];
      s.C(pos[e.row], pos[e.col]) += e.val;
      if (e.row != e.col) s.C(pos[e.col], pos[e.row]) += e.val;
    }
    std::vector<std::map<int, std::vector<Entry>>> pv(local.size());
    for (auto& e : blk.coeffs) {
      int ci = which[e.row];
      int r = pos[e.row], c = pos[e.col];
      if (r > c) std::swap(r, c);
      pv[ci][e.var].push_back({r, c, e.val});
    }
    for (size_t ci = 0; ci < local.size(); ++ci) {
      for (auto& [var, ents] : pv[ci]) {
        local[ci].vars.push_back(var);
        local[ci].coeff.push_back(ents);
      }
      subs.push_back(std::move(local[ci]));
    }
  }
  return subs;
}

double inner_full(const std::vector<Entry>& ents, const Eigen::MatrixXd& M) {
  double s = 0;
  for (auto& e : ents) s += e.r == e.c ? e.v * M(e.r, e.r) : e.v * (M(e.r, e.c) + M(e.c, e.r));
  return s;
}

void add_to(const std::vector<Entry>& ents, double scale, Eigen::MatrixXd& M) {
  for (auto& e : ents) {
    M(e.r, e.c) += scale * e.v;
    if (e.r != e.c) M(e.c, e.r) += scale * e.v;
  }
}

// tr(A U B U) for sparse symmetric A, B given by upper entry lists.
double tr_AUBU(const std::vector<Entry>& A, const std::vector<Entry>& B,
               const Eigen::MatrixXd& U) {
  double s = 0;
  for (auto& a : A) {
    for (auto& b : B) {
      double t = U(a.c, b.r) * U(b.c, a.r);
      if (b.r != b.c) t += U(a.c, b.c) * U(b.r, a.r);
      if (a.r != a.c) {
        double t2 = U(a.r, b.r) * U(b.c, a.c);
        if (b.r != b.c) t2 += U(a.r, b.c) * U(b.r, a.c);
        t += t2;
      }
      s += a.v * b.v * t;
    }
  }
  return s;
}

// Schur complement assembler; dense or sparse storage picked from the
// block-sharing pattern.
struct Schur {
  int m = 0;
  bool dense = true;
  Eigen::MatrixXd H;
  Eigen::SparseMatrix<double> Hs;      // lower triangle
  std::vector<std::vector<int>> slot;  // per sub, per local pair, value slot
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>, Eigen::Lower> slt;
  bool analyzed = false;
  double reg = 0.0;

  void setup(const std::vector<Sub>& subs, int nvars) {
    m = nvars;
    double est = 0;
    for (auto& s : subs) est += (double)s.vars.size() * (double)s.vars.size();
    dense = (m <= 2000) || est > 0.15 * (double)m * (double)m;
    if (dense) {
      H.resize(m, m);
      return;
    }
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve((size_t)(est / 2) + m);
    for (int i = 0; i < m; ++i) trips.push_back({i, i, 0.0});
    for (auto& s : subs)
      for (size_t i = 0; i < s.vars.size(); ++i)
        for (size_t j = i; j < s.vars.size(); ++j) {
          int gi = s.vars[i], gj = s.vars[j];
          trips.push_back({std::max(gi, gj), std::min(gi, gj), 0.0});
        }
    Hs.resize(m, m);
    Hs.setFromTriplets(trips.begin(), trips.end());
    Hs.makeCompressed();
    slot.resize(subs.size());
    for (size_t si = 0; si < subs.size(); ++si) {
      auto& s = subs[si];
      slot[si].reserve(s.vars.size() * (s.vars.size() + 1) / 2);
      for (size_t i = 0; i < s.vars.size(); ++i)
        for (size_t j = i; j < s.vars.size(); ++j) {
          int gi = s.vars[i], gj = s.vars[j];
          int row = std::max(gi, gj), col = std::min(gi, gj);
          int lo = Hs.outerIndexPtr()[col], hi = Hs.outerIndexPtr()[col + 1];
          const int* inner = Hs.innerIndexPtr();
          int k = (int)(std::lower_bound(inner + lo, inner + hi, row) - inner);
          slot[si].push_back(k);
        }
    }
  }

  void reset() {
    if (dense)
      H.setZero();
    else
      std::fill(Hs.valuePtr(), Hs.valuePtr() + Hs.nonZeros(), 0.0);
  }

  void add(size_t si, const Sub& s, int i, int j, double v) {
    if (dense) {
      int gi = s.vars[i], gj = s.vars[j];
      H(std::min(gi, gj), std::max(gi, gj)) += v;
    } else {
      int idx = i * (2 * (int)s.vars.size() - i + 1) / 2 + (j - i);
      Hs.valuePtr()[slot[si][idx]] += v;
    }
  }

  bool factorize() {
    if (dense) {
      H.triangularView<Eigen::StrictlyLower>() =
          H.transpose().triangularView<Eigen::StrictlyLower>();
      if (reg > 0) H.diagonal().array() += reg;
      llt.compute(H);
      return llt.info() == Eigen::Success;
    }
    if (reg > 0)
      for (int c = 0; c < m; ++c) Hs.coeffRef(c, c) += reg;
    if (!analyzed) {
      slt.analyzePattern(Hs);
      analyzed = true;
    }
    slt.factorize(Hs);
    return slt.info() == Eigen::Success;
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& b) const {
    return dense ? llt.solve(b).eval() : slt.solve(b).eval();
  }

  Eigen::VectorXd multiply(const Eigen::VectorXd& v) const {
    if (dense) return H.selfadjointView<Eigen::Upper>() * v;
    return Hs.selfadjointView<Eigen::Lower>() * v;
  }
};

double max_step(const Eigen::LLT<Eigen::MatrixXd>& lltX, const Eigen::MatrixXd& D) {
  // largest a with X + a D >= 0, via lmin of Lx^-1 D Lx^-T
  Eigen::MatrixXd K = lltX.matrixL().solve(D);
  K = lltX.matrixL().solve(K.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-13) return 1e30;
  return -1.0 / lmin;
}

SolveStatus ipm_core(const BlockSDP& sdp, const SolverOptions& opts, Eigen::VectorXd& x_out,
                     std::vector<Eigen::MatrixXd>& X_out, std::vector<Eigen::MatrixXd>& Y_out,
                     std::vector<Sub>& subs, SdpSolution& sol) {
  int m = sdp.num_vars;
  subs = split_blocks(sdp);
  int nsub = (int)subs.size();

  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) c[i] = sdp.objective[i];

  double maxC = 1.0, maxA = 1.0, maxdim = 1.0;
  for (auto& s : subs) {
    if (s.dim) maxC = std::max(maxC, s.C.cwiseAbs().maxCoeff());
    for (auto& ents : s.coeff)
      for (auto& e : ents) maxA = std::max(maxA, std::abs(e.v));
    maxdim = std::max(maxdim, (double)s.dim);
  }
  double xi = (10.0 + 2.0 * std::sqrt(maxdim)) * std::max(1.0, maxC);
  double eta = (10.0 + 2.0 * std::sqrt(maxdim)) * std::max(1.0, c.cwiseAbs().maxCoeff() / maxA);

  std::vector<Eigen::MatrixXd> X(nsub), Y(nsub);
  for (int b = 0; b < nsub; ++b) {
    X[b] = xi * Eigen::MatrixXd::Identity(subs[b].dim, subs[b].dim);
    Y[b] = eta * Eigen::MatrixXd::Identity(subs[b].dim, subs[b].dim);
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(m);

  Schur schur;
  schur.setup(subs, m);

  double total_dim = 0;
  for (auto& s : subs) total_dim += s.dim;
  if (total_dim == 0) total_dim = 1;

  auto map_of = [&](int b, const Eigen::VectorXd& v) {
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(subs[b].dim, subs[b].dim);
    for (size_t i = 0; i < subs[b].vars.size(); ++i) {
      double xv = v[subs[b].vars[i]];
      if (xv != 0.0) add_to(subs[b].coeff[i], xv, M);
    }
    return M;
  };

  std::vector<Eigen::LLT<Eigen::MatrixXd>> lltX(nsub), lltY(nsub);
  std::vector<Eigen::MatrixXd> G(nsub), Ginv(nsub), U(nsub);
  std::vector<Eigen::VectorXd> lam(nsub);

  SolveStatus status = SolveStatus::numerical_failure;
  double best_gap = 1e300, best_score = 1e300;
  int stall = 0;
  Eigen::VectorXd x_best = x;
  std::vector<Eigen::MatrixXd> X_best = X, Y_best = Y;
  double best_pobj = 0, best_dobj = 0, best_pinf = 1e300, best_dinf = 1e300;

  auto wrap_best = [&]() {
    x = x_best;
    X = X_best;
    Y = Y_best;
    sol.primal_obj = best_pobj;
    sol.dual_obj = best_dobj;
    sol.primal_infeas = best_pinf;
    sol.dual_infeas = best_dinf;
    bool strict =
        best_gap <= opts.gap_tol && best_pinf <= opts.feas_tol && best_dinf <= opts.feas_tol;
    if (strict) return SolveStatus::optimal;
    return best_score <= 1e-4 ? SolveStatus::near_optimal : SolveStatus::numerical_failure;
  };

  int it = 0;
  for (it = 0; it < opts.max_iter; ++it) {
    std::vector<Eigen::MatrixXd> Rp(nsub);
    double pinf = 0, maxCs = 1;
    for (int b = 0; b < nsub; ++b) {
      Rp[b] = map_of(b, x) - subs[b].C - X[b];
      pinf = std::max(pinf, Rp[b].cwiseAbs().maxCoeff());
      maxCs = std::max(maxCs, subs[b].C.cwiseAbs().maxCoeff() + X[b].cwiseAbs().maxCoeff());
    }
    pinf /= (1 + maxCs);
    Eigen::VectorXd aty = Eigen::VectorXd::Zero(m);
    for (int b = 0; b < nsub; ++b)
      for (size_t i = 0; i < subs[b].vars.size(); ++i)
        aty[subs[b].vars[i]] += inner_full(subs[b].coeff[i], Y[b]);
    Eigen::VectorXd rd = c - aty;
    double dinf =
        rd.cwiseAbs().maxCoeff() / (1 + c.cwiseAbs().maxCoeff() + aty.cwiseAbs().maxCoeff());

    double gap = 0;
    for (int b = 0; b < nsub; ++b) gap += X[b].cwiseProduct(Y[b]).sum();
    double pobj = c.dot(x) + sdp.obj_offset;
    double dobj = sdp.obj_offset;
    for (int b = 0; b < nsub; ++b) dobj += subs[b].C.cwiseProduct(Y[b]).sum();
    double relgap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));

    sol.primal_obj = pobj;
    sol.dual_obj = dobj;
    sol.primal_infeas = pinf;
    sol.dual_infeas = dinf;

    if (opts.verbose)
      std::printf("it %3d  pobj %+.8e  dobj %+.8e  gap %.2e  pinf %.2e  dinf %.2e\n", it, pobj,
                  dobj, relgap, pinf, dinf);

    double score = relgap + pinf + dinf;
    if (score < 0.9 * best_score) {
      best_score = score;
      best_gap = relgap;
      stall = 0;
      x_best = x;
      X_best = X;
      Y_best = Y;
      best_pobj = pobj;
      best_dobj = dobj;
      best_pinf = pinf;
      best_dinf = dinf;
    } else if (++stall >= 6) {
      status = wrap_best();
      break;
    }
    if (relgap <= opts.gap_tol && pinf <= opts.feas_tol && dinf <= opts.feas_tol) {
      status = SolveStatus::optimal;
      break;
    }
    double scale0 = 1 + std::abs(sdp.obj_offset);
    if (dinf <= opts.feas_tol && dobj > 1e11 * scale0) {
      status = SolveStatus::infeasible;
      break;
    }
    if (pinf <= opts.feas_tol && pobj < -1e11 * scale0) {
      status = SolveStatus::unbounded;
      break;
    }

    // NT scaling
    bool scaling_ok = true;
    for (int b = 0; b < nsub; ++b) {
      lltX[b].compute(X[b]);
      lltY[b].compute(Y[b]);
      if (lltX[b].info() != Eigen::Success || lltY[b].info() != Eigen::Success) {
        scaling_ok = false;
        break;
      }
      Eigen::MatrixXd Lx = lltX[b].matrixL(), Ly = lltY[b].matrixL();
      Eigen::MatrixXd M = Ly.transpose() * Lx;
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
      lam[b] = svd.singularValues();
      Eigen::VectorXd si = lam[b].cwiseSqrt().cwiseInverse();
      G[b] = Lx * svd.matrixV() * si.asDiagonal();
      Eigen::MatrixXd A = Lx.transpose()
                              .triangularView<Eigen::Upper>()
                              .solve(svd.matrixV())
                              .transpose();  // V' Lx^-1
      Ginv[b] = lam[b].cwiseSqrt().asDiagonal() * A;
      U[b] = Ginv[b].transpose() * Ginv[b];
    }
    if (!scaling_ok) {
      status = wrap_best();
      break;
    }

    // Schur matrix
    schur.reset();
    for (size_t si = 0; si < subs.size(); ++si) {
      const Sub& s = subs[si];
      int k = (int)s.vars.size();
      const Eigen::MatrixXd& Ub = U[si];
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8)
#endif
      for (int i = 0; i < k; ++i) {
        const auto& Ai = s.coeff[i];
        if (Ai.size() <= 3) {
          for (int j = i; j < k; ++j) schur.add(si, s, i, j, tr_AUBU(Ai, s.coeff[j], Ub));
        } else {
          std::vector<int> cols;
          for (auto& e : Ai) {
            cols.push_back(e.r);
            if (e.c != e.r) cols.push_back(e.c);
          }
          std::sort(cols.begin(), cols.end());
          cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
          std::vector<int> posv(s.dim, -1);
          for (size_t t = 0; t < cols.size(); ++t) posv[cols[t]] = (int)t;
          Eigen::MatrixXd Z = Eigen::MatrixXd::Zero(s.dim, (int)cols.size());
          for (auto& e : Ai) {
            Z.col(posv[e.c]) += e.v * Ub.col(e.r);
            if (e.r != e.c) Z.col(posv[e.r]) += e.v * Ub.col(e.c);
          }
          Eigen::MatrixXd Usub((int)cols.size(), s.dim);
          for (size_t t = 0; t < cols.size(); ++t) Usub.row(t) = Ub.row(cols[t]);
          Eigen::MatrixXd Ti = Z * Usub;
          for (int j = i; j < k; ++j) schur.add(si, s, i, j, inner_full(s.coeff[j], Ti));
        }
      }
    }
    double hscale = schur.dense && m > 0 ? schur.H.diagonal().cwiseAbs().maxCoeff() : 1.0;
    schur.reg = 0;
    if (!schur.factorize()) {
      schur.reg = std::max(1e-13 * std::max(hscale, 1.0), 1e-14);
      bool ok = false;
      for (int t = 0; t < 6 && !ok; ++t, schur.reg *= 100) ok = schur.factorize();
      if (!ok) {
        status = wrap_best();
        break;
      }
    }

    auto solve_kkt = [&](const std::vector<Eigen::MatrixXd>& URcU, Eigen::VectorXd& dx) {
      Eigen::VectorXd g = -rd;
      for (int b = 0; b < nsub; ++b) {
        Eigen::MatrixXd T = URcU[b] - U[b] * Rp[b] * U[b];
        for (size_t i = 0; i < subs[b].vars.size(); ++i)
          g[subs[b].vars[i]] += inner_full(subs[b].coeff[i], T);
      }
      dx = schur.solve(g);
      Eigen::VectorXd r1 = g - schur.multiply(dx);  // one refinement round
      dx += schur.solve(r1);
    };

    double nu = gap / total_dim;

    // predictor: Rc = -X, and U X U = Y exactly under NT scaling
    std::vector<Eigen::MatrixXd> URcU(nsub);
    for (int b = 0; b < nsub; ++b) URcU[b] = -Y[b];
    Eigen::VectorXd dx;
    solve_kkt(URcU, dx);
    std::vector<Eigen::MatrixXd> dX(nsub), dY(nsub);
    double ap = 1e30, ad = 1e30;
    for (int b = 0; b < nsub; ++b) {
      dX[b] = map_of(b, dx) + Rp[b];
      dY[b] = URcU[b] - U[b] * dX[b] * U[b];
      dY[b] = 0.5 * (dY[b] + dY[b].transpose()).eval();
      ap = std::min(ap, max_step(lltX[b], dX[b]));
      ad = std::min(ad, max_step(lltY[b], dY[b]));
    }
    ap = std::min(1.0, opts.step_frac * ap);
    ad = std::min(1.0, opts.step_frac * ad);
    double gap_aff = 0;
    for (int b = 0; b < nsub; ++b)
      gap_aff += (X[b] + ap * dX[b]).cwiseProduct(Y[b] + ad * dY[b]).sum();
    double sigma = std::pow(std::max(gap_aff, 0.0) / gap, 3.0);
    sigma = std::min(std::max(sigma, 1e-10), 0.999999);
    double tau = sigma * nu;

    // corrector (combined direction)
    for (int b = 0; b < nsub; ++b) {
      Eigen::MatrixXd Dx = Ginv[b] * dX[b] * Ginv[b].transpose();
      Eigen::MatrixXd Dy = G[b].transpose() * dY[b] * G[b];
      Eigen::MatrixXd cross = 0.5 * (Dx * Dy + Dy * Dx);
      int N = subs[b].dim;
      Eigen::MatrixXd Rhat(N, N);
      for (int a2 = 0; a2 < N; ++a2)
        for (int b2 = 0; b2 < N; ++b2) {
          double num = -cross(a2, b2);
          if (a2 == b2) num += tau - lam[b][a2] * lam[b][a2];
          Rhat(a2, b2) = 2.0 * num / (lam[b][a2] + lam[b][b2]);
        }
      Rhat = 0.5 * (Rhat + Rhat.transpose()).eval();
      URcU[b] = Ginv[b].transpose() * Rhat * Ginv[b];
    }
    solve_kkt(URcU, dx);
    ap = 1e30;
    ad = 1e30;
    for (int b = 0; b < nsub; ++b) {
      dX[b] = map_of(b, dx) + Rp[b];
      dY[b] = URcU[b] - U[b] * dX[b] * U[b];
      dY[b] = 0.5 * (dY[b] + dY[b].transpose()).eval();
      ap = std::min(ap, max_step(lltX[b], dX[b]));
      ad = std::min(ad, max_step(lltY[b], dY[b]));
    }
    ap = std::min(1.0, opts.step_frac * ap);
    ad = std::min(1.0, opts.step_frac * ad);

    // keep the dual step from destroying an already-small dual residual
    double dinf_abs = rd.cwiseAbs().maxCoeff();
    for (int attempt = 0; attempt < 4; ++attempt) {
      Eigen::VectorXd rd_new = rd;
      for (int b = 0; b < nsub; ++b)
        for (size_t i = 0; i < subs[b].vars.size(); ++i)
          rd_new[subs[b].vars[i]] -= ad * inner_full(subs[b].coeff[i], dY[b]);
      double cand = rd_new.cwiseAbs().maxCoeff();
      if (cand <= std::max(4.0 * dinf_abs, opts.feas_tol * (1 + c.cwiseAbs().maxCoeff()))) break;
      ad *= 0.5;
    }

    x += ap * dx;
    for (int b = 0; b < nsub; ++b) {
      X[b] += ap * dX[b];
      Y[b] += ad * dY[b];
      X[b] = 0.5 * (X[b] + X[b].transpose()).eval();
      Y[b] = 0.5 * (Y[b] + Y[b].transpose()).eval();
    }
  }

  if (it >= opts.max_iter) status = wrap_best();
  sol.iterations = it;
  x_out = x;
  X_out = X;
  Y_out = Y;
  return status;
}

}  // namespace

SdpSolution solve_sdp(const BlockSDP& sdp, const SolverOptions& opts) {
  SdpSolution sol;
  sol.x.assign(sdp.num_vars, 0.0);

  Presolved pre = presolve_equalities(sdp);
  if (pre.inconsistent) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }

  Eigen::VectorXd xr;
  std::vector<Eigen::MatrixXd> X, Y;
  std::vector<Sub> subs;
  if (pre.sdp.num_vars == 0) {
    // fully determined by the equalities; evaluate feasibility directly
    xr.resize(0);
    sol.status = SolveStatus::optimal;
    sol.primal_obj = sol.dual_obj = pre.sdp.obj_offset;
    subs = split_blocks(pre.sdp);
    for (auto& s : subs) {
      X.push_back(-s.C);
      Y.push_back(Eigen::MatrixXd::Zero(s.dim, s.dim));
      if (s.dim &&
          Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(-s.C).eigenvalues().minCoeff() < -1e-9)
        sol.status = SolveStatus::infeasible;
    }
    if (sol.status == SolveStatus::infeasible) return sol;
  } else {
    sol.status = ipm_core(pre.sdp, opts, xr, X, Y, subs, sol);
  }
  if (sol.status == SolveStatus::infeasible || sol.status == SolveStatus::unbounded) return sol;

  // expand eliminated variables
  std::vector<double> xfull(sdp.num_vars, 0.0);
  for (int v = 0; v < sdp.num_vars; ++v)
    if (pre.new_of_old[v] >= 0) xfull[v] = xr[pre.new_of_old[v]];
  for (auto it2 = pre.subs.rbegin(); it2 != pre.subs.rend(); ++it2) {
    double val = it2->rhs;
    for (auto& [w, coef] : it2->terms) val -= coef * xfull[w];
    xfull[it2->pivot] = val;
  }
  sol.x = xfull;

  // reassemble block primal/dual matrices in the original shapes
  sol.block_primal.clear();
  sol.block_dual.clear();
  for (auto& blk : sdp.blocks) {
    sol.block_primal.push_back(Eigen::MatrixXd::Zero(blk.dim, blk.dim));
    sol.block_dual.push_back(Eigen::MatrixXd::Zero(blk.dim, blk.dim));
  }
  for (size_t b = 0; b < subs.size(); ++b) {
    const Sub& s = subs[b];
    for (int i = 0; i < s.dim; ++i)
      for (int j = 0; j < s.dim; ++j) {
        sol.block_primal[s.parent](s.rows[i], s.rows[j]) = X[b](i, j);
        sol.block_dual[s.parent](s.rows[i], s.rows[j]) = Y[b](i, j);
      }
  }

  // duals of the eliminated rows, from stationarity at the pivot variables
  sol.eq_duals.assign(sdp.equalities.size(), 0.0);
  size_t t = 0;
  for (auto& s : pre.subs) {
    double mu = sdp.objective[s.pivot];
    for (size_t b = 0; b < sdp.blocks.size(); ++b)
      for (auto& e : sdp.blocks[b].coeffs)
        if (e.var == s.pivot)
          mu -= (e.row == e.col ? sol.block_dual[b](e.row, e.col)
                                : 2 * sol.block_dual[b](e.row, e.col)) *
                e.val;
    if (t < sol.eq_duals.size()) sol.eq_duals[t++] = mu;
  }
  return sol;
}

}  // namespace pmo

#include "pmo/extract.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

namespace pmo {

int numeric_rank(const Eigen::MatrixXd& M, double tol) {
  if (M.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  if (smax <= 0) return 0;
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > tol * smax) ++r;
  return r;
}

namespace {

MonomialBasis clique_basis(int n, const std::vector<int>& vars, int d) {
  MonomialBasis out;
  for (auto& a : full_basis((int)vars.size(), d)) out.push_back(embed_exponent(a, vars, n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

FlatnessReport flatness_check(const MomentSolution& ms, const std::vector<int>& clique_vars,
                              int r, int d_K, double rank_tol) {
  FlatnessReport rep;
  if (d_K < 1) d_K = 1;
  auto prows = all_rows(ms.p);
  Eigen::MatrixXd Mhi = moment_matrix(ms, clique_basis(ms.n, clique_vars, r), prows);
  Eigen::MatrixXd Mlo = moment_matrix(ms, clique_basis(ms.n, clique_vars, r - d_K), prows);
  rep.rank_high = numeric_rank(Mhi, rank_tol);
  rep.rank_low = numeric_rank(Mlo, rank_tol);
  rep.flat = rep.rank_high == rep.rank_low;
  return rep;
}

ExtractionResult extract_atoms(const MomentSolution& ms, const std::vector<int>& clique_vars,
                               int r, double rank_tol) {
  ExtractionResult res;
  int n = ms.n, p = ms.p;
  int nl = (int)clique_vars.size();
  MonomialBasis basis = clique_basis(n, clique_vars, r);
  MonomialBasis low = clique_basis(n, clique_vars, r - 1);
  auto prows = all_rows(p);
  Eigen::MatrixXd M = moment_matrix(ms, basis, prows);
  M = 0.5 * (M + M.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
  double emax = es.eigenvalues().cwiseAbs().maxCoeff();
  if (emax <= 0) {
    res.message = "zero moment matrix";
    return res;
  }
  std::vector<int> keep;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > rank_tol * emax) keep.push_back(i);
  int R = (int)keep.size();
  if (R == 0) {
    res.message = "rank zero";
    return res;
  }
  Eigen::MatrixXd V(M.rows(), R);
  for (int k = 0; k < R; ++k)
    V.col(k) = es.eigenvectors().col(keep[k]) * std::sqrt(es.eigenvalues()[keep[k]]);

  // row index of (monomial a, block coordinate i)
  std::map<Exponent, int> pos;
  for (size_t a = 0; a < basis.size(); ++a) pos[basis[a]] = (int)a;
  auto row_of = [&](const Exponent& a, int i) { return pos.at(a) * p + i; };

  // V restricted to degree <= r-1 rows and its shifts
  int nlow = (int)low.size();
  Eigen::MatrixXd V0(nlow * p, R);
  for (int a = 0; a < nlow; ++a)
    for (int i = 0; i < p; ++i) V0.row(a * p + i) = V.row(row_of(low[a], i));
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V0);
  if (qr.rank() < R) {
    res.message = "column space not determined below top degree (not flat)";
    return res;
  }

  std::vector<Eigen::MatrixXd> N(nl);
  for (int k = 0; k < nl; ++k) {
    Eigen::MatrixXd Vk(nlow * p, R);
    for (int a = 0; a < nlow; ++a) {
      Exponent shifted = low[a];
      shifted.e[clique_vars[k]] += 1;
      for (int i = 0; i < p; ++i) Vk.row(a * p + i) = V.row(row_of(shifted, i));
    }
    N[k] = qr.solve(Vk);
  }

  // random (seeded) convex combination, then ordered real Schur
  std::mt19937 gen(20240517);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  Eigen::VectorXd wts(nl);
  double tot = 0;
  for (int k = 0; k < nl; ++k) {
    wts[k] = uni(gen);
    tot += wts[k];
  }
  Eigen::MatrixXd Nmix = Eigen::MatrixXd::Zero(R, R);
  for (int k = 0; k < nl; ++k) Nmix += (wts[k] / tot) * N[k];
  Eigen::RealSchur<Eigen::MatrixXd> schur(Nmix);
  Eigen::MatrixXd Q = schur.matrixU();

  // per Schur vector, coordinates from Rayleigh quotients; cluster equal ones
  std::vector<Eigen::VectorXd> points(R, Eigen::VectorXd(nl));
  for (int c = 0; c < R; ++c)
    for (int k = 0; k < nl; ++k) points[c][k] = Q.col(c).dot(N[k] * Q.col(c));
  double scale = 1.0;
  for (auto& pt : points) scale = std::max(scale, pt.cwiseAbs().maxCoeff());
  std::vector<Eigen::VectorXd> centers;
  for (auto& pt : points) {
    bool found = false;
    for (auto& c : centers)
      if ((c - pt).cwiseAbs().maxCoeff() <= 1e-3 * scale) {
        found = true;
        break;
      }
    if (!found) centers.push_back(pt);
  }

  // weights by least squares on S_alpha = sum_i x_i^alpha W_i over the
  // clique-supported exponents
  std::vector<bool> mask(n, false);
  for (int v : clique_vars) mask[v] = true;
  std::vector<Exponent> deltas;
  for (auto& [d, S] : ms.S)
    if (d.degree() <= 2 * r && supported_on(d, mask)) deltas.push_back(d);
  int t = (int)centers.size();
  Eigen::MatrixXd A((int)deltas.size(), t);
  for (size_t di = 0; di < deltas.size(); ++di)
    for (int c = 0; c < t; ++c) {
      double mono = 1.0;
      for (int k = 0; k < nl; ++k)
        for (int e = 0; e < deltas[di].e[clique_vars[k]]; ++e) mono *= centers[c][k];
      A((int)di, c) = mono;
    }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> aqr(A);
  std::vector<Eigen::MatrixXd> W(t, Eigen::MatrixXd::Zero(p, p));
  for (int u = 0; u < p; ++u)
    for (int v = u; v < p; ++v) {
      Eigen::VectorXd rhs((int)deltas.size());
      for (size_t di = 0; di < deltas.size(); ++di) rhs[(int)di] = ms.value(deltas[di])(u, v);
      Eigen::VectorXd sol = aqr.solve(rhs);
      for (int c = 0; c < t; ++c) W[c](u, v) = W[c](v, u) = sol[c];
    }
  // clip tiny negative eigenvalues so the weights stay PSD
  for (auto& Wc : W) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> we(Wc);
    Eigen::VectorXd ev = we.eigenvalues().cwiseMax(0.0);
    Wc = we.eigenvectors() * ev.asDiagonal() * we.eigenvectors().transpose();
  }

  double resid = 0;
  for (size_t di = 0; di < deltas.size(); ++di) {
    Eigen::MatrixXd approx = Eigen::MatrixXd::Zero(p, p);
    for (int c = 0; c < t; ++c) approx += A((int)di, c) * W[c];
    resid = std::max(resid, (approx - ms.value(deltas[di])).norm());
  }

  res.ok = resid <= 1e-5;
  res.residual = resid;
  if (!res.ok) res.message = "reconstruction residual " + std::to_string(resid);
  for (int c = 0; c < t; ++c) {
    if (W[c].trace() < 1e-8) continue;  // numerically empty atom
    res.atoms.push_back({centers[c], W[c]});
  }
  return res;
}

namespace {

Eigen::VectorXd lift_point(int n, const std::vector<int>& vars, const Eigen::VectorXd& x) {
  Eigen::VectorXd full = Eigen::VectorXd::Constant(n, std::nan(""));
  for (size_t i = 0; i < vars.size(); ++i) full[vars[i]] = x[(int)i];
  return full;
}

bool check_minimizer(const PMOProblem& prob, const Eigen::VectorXd& x, double bound) {
  std::vector<double> xv(x.data(), x.data() + x.size());
  for (auto& c : prob.constraints) {
    Eigen::MatrixXd G = c.mat.eval(xv);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
    if (c.kind == ConstraintKind::inequality) {
      if (es.eigenvalues().minCoeff() < -1e-6) return false;
    } else {
      if (es.eigenvalues().cwiseAbs().maxCoeff() > 1e-6) return false;
    }
  }
  Eigen::MatrixXd F = prob.objective.eval(xv);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(F);
  return std::abs(es.eigenvalues().minCoeff() - bound) <= 1e-4 * std::max(1.0, std::abs(bound));
}

}  // namespace

Certificate merge_cliques(const PMOProblem& prob, const MomentSolution& ms,
                          const CliqueDecomposition& dec,
                          const std::vector<ExtractionResult>& per_clique, int r, double bound,
                          double rank_tol) {
  Certificate cert;
  cert.lambda = bound;
  int n = prob.n;
  size_t t = dec.cliques.size();
  auto prows = all_rows(ms.p);
  Eigen::MatrixXd S0 = ms.value(Exponent(n));

  auto finish = [&](CertStatus st, std::vector<Eigen::VectorXd> pts,
                    std::vector<Eigen::MatrixXd> wts, const std::string& note) {
    // certified minimizers must actually attain the bound on K
    for (auto& x : pts)
      if (!check_minimizer(prob, x, bound)) {
        cert.status = CertStatus::not_certified;
        cert.detail = "candidate minimizer failed the feasibility/value check";
        return false;
      }
    cert.status = st;
    cert.minimizers = std::move(pts);
    cert.weights = std::move(wts);
    cert.detail = note;
    return true;
  };

  if (t == 1) {
    // single clique: pass-through of the extraction
    if (!per_clique[0].ok) {
      cert.detail = "extraction failed: " + per_clique[0].message;
      return cert;
    }
    std::vector<Eigen::VectorXd> pts;
    std::vector<Eigen::MatrixXd> wts;
    for (auto& a : per_clique[0].atoms) {
      pts.push_back(lift_point(n, dec.cliques[0], a.x));
      wts.push_back(a.W);
    }
    finish(CertStatus::dirac, std::move(pts), std::move(wts), "single clique");
    return cert;
  }

  for (auto& pc : per_clique)
    if (!pc.ok) {
      cert.detail = "extraction failed on a clique: " + pc.message;
      return cert;
    }

  int rmin = min_relaxation_order(prob);

  // (a) global Dirac: every clique moment matrix at r_min has rank one
  {
    bool all_rank1 = true;
    for (auto& I : dec.cliques) {
      Eigen::MatrixXd M = moment_matrix(ms, clique_basis(n, I, rmin), prows);
      if (numeric_rank(M, rank_tol) != 1) {
        all_rank1 = false;
        break;
      }
    }
    if (all_rank1) {
      Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
      std::vector<char> seen(n, 0);
      bool consistent = true;
      for (size_t l = 0; l < t && consistent; ++l) {
        if (per_clique[l].atoms.size() != 1) {
          consistent = false;
          break;
        }
        auto& a = per_clique[l].atoms[0];
        for (size_t i = 0; i < dec.cliques[l].size(); ++i) {
          int v = dec.cliques[l][i];
          if (seen[v] && std::abs(x[v] - a.x[(int)i]) > 1e-3) consistent = false;
          x[v] = a.x[(int)i];
          seen[v] = 1;
        }
      }
      if (consistent && finish(CertStatus::dirac, {x}, {S0}, "rank-one Dirac merge")) return cert;
    }
  }

  // overlap moment blocks
  auto overlap_rank1 = [&]() {
    for (size_t i = 0; i < t; ++i)
      for (size_t j = i + 1; j < t; ++j) {
        std::vector<int> inter;
        std::set_intersection(dec.cliques[i].begin(), dec.cliques[i].end(),
                              dec.cliques[j].begin(), dec.cliques[j].end(),
                              std::back_inserter(inter));
        if (inter.empty()) continue;
        Eigen::MatrixXd M = moment_matrix(ms, clique_basis(n, inter, r), prows);
        if (numeric_rank(M, rank_tol) != 1) return false;
      }
    return true;
  };

  // (b) product merge: weights proportional to S_0 and rank-one overlaps
  {
    bool prop = true;
    double s0n = std::max(1.0, S0.norm());
    for (auto& pc : per_clique)
      for (auto& a : pc.atoms) {
        double xi = a.W.trace() / std::max(S0.trace(), 1e-300);
        if ((a.W - xi * S0).norm() > 1e-4 * s0n) prop = false;
      }
    if (prop && overlap_rank1()) {
      // cartesian product filtered by overlap consistency
      std::vector<Eigen::VectorXd> pts;
      std::vector<Eigen::MatrixXd> wts;
      std::vector<size_t> pick(t, 0);
      while (true) {
        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        std::vector<char> seen(n, 0);
        bool consistent = true;
        double xi_prod = 1.0;
        for (size_t l = 0; l < t && consistent; ++l) {
          auto& a = per_clique[l].atoms[pick[l]];
          xi_prod *= a.W.trace() / std::max(S0.trace(), 1e-300);
          for (size_t i = 0; i < dec.cliques[l].size(); ++i) {
            int v = dec.cliques[l][i];
            if (seen[v] && std::abs(x[v] - a.x[(int)i]) > 1e-3) consistent = false;
            x[v] = a.x[(int)i];
            seen[v] = 1;
          }
        }
        if (consistent) {
          pts.push_back(x);
          wts.push_back(xi_prod * S0);
        }
        // next combination
        size_t l = 0;
        while (l < t && ++pick[l] == per_clique[l].atoms.size()) pick[l++] = 0;
        if (l == t) break;
      }
      if (!pts.empty() &&
          finish(CertStatus::product_merge, std::move(pts), std::move(wts),
                 "rank-one overlaps, weights proportional to S_0"))
        return cert;
    }
  }

  // (c) matched merge: equal atom counts, match by overlap coordinates and
  // equal weight matrices
  {
    size_t s = per_clique[0].atoms.size();
    bool sizes_ok = s > 0;
    for (auto& pc : per_clique) sizes_ok = sizes_ok && pc.atoms.size() == s;
    if (sizes_ok) {
      std::vector<std::vector<int>> match(t, std::vector<int>());
      match[0].resize(s);
      std::iota(match[0].begin(), match[0].end(), 0);
      bool ok = true;
      for (size_t l = 1; l < t && ok; ++l) {
        // greedy nearest neighbour against clique 0..l-1 on shared coords
        std::vector<char> used(s, 0);
        match[l].assign(s, -1);
        for (size_t i = 0; i < s && ok; ++i) {
          int best = -1;
          double bestd = 1e300;
          for (size_t j = 0; j < s; ++j) {
            if (used[j]) continue;
            // distance on overlaps with all earlier cliques
            double d = 0;
            bool has = false;
            for (size_t l2 = 0; l2 < l; ++l2) {
              auto& a = per_clique[l2].atoms[match[l2][i]];
              auto& b = per_clique[l].atoms[j];
              for (size_t vi = 0; vi < dec.cliques[l2].size(); ++vi)
                for (size_t vj = 0; vj < dec.cliques[l].size(); ++vj)
                  if (dec.cliques[l2][vi] == dec.cliques[l][vj]) {
                    d = std::max(d, std::abs(a.x[(int)vi] - b.x[(int)vj]));
                    has = true;
                  }
            }
            if (!has) d = 0;  // disjoint: any pairing allowed, weights decide
            if (d < bestd) {
              bestd = d;
              best = (int)j;
            }
          }
          if (best < 0 || bestd > 1e-4) {
            ok = false;
            break;
          }
          auto& Wa = per_clique[0].atoms[match[0][i]].W;
          auto& Wb = per_clique[l].atoms[best].W;
          if ((Wa - Wb).norm() > 1e-4 * std::max(1.0, Wa.norm())) {
            ok = false;
            break;
          }
          match[l][i] = best;
          used[best] = 1;
        }
      }
      if (ok) {
        std::vector<Eigen::VectorXd> pts;
        std::vector<Eigen::MatrixXd> wts;
        for (size_t i = 0; i < s; ++i) {
          Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
          for (size_t l = 0; l < t; ++l) {
            auto& a = per_clique[l].atoms[match[l][i]];
            for (size_t vi = 0; vi < dec.cliques[l].size(); ++vi)
              x[dec.cliques[l][vi]] = a.x[(int)vi];
          }
          pts.push_back(x);
          wts.push_back(per_clique[0].atoms[match[0][i]].W);
        }
        if (finish(CertStatus::matched_merge, std::move(pts), std::move(wts),
                   "atoms matched across cliques"))
          return cert;
      }
    }
  }

  cert.status = CertStatus::not_certified;
  if (cert.detail.empty()) cert.detail = "no merge route applied";
  return cert;
}

}  // namespace pmo

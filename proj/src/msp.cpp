#include "pmo/msp.hpp"

#include <set>
#include <stdexcept>

namespace pmo {

SparsityGraph matrix_sparsity_graph(const SymPolyMatrix& F) {
  int p = F.dim();
  SparsityGraph g(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (!F.entry_is_zero(i, j)) g.add_edge(i, j);
  return g;
}

ObjectiveDecomposition objective_cliques(const SymPolyMatrix& F) {
  SparsityGraph g = chordal_closure(matrix_sparsity_graph(F));
  ObjectiveDecomposition dec;
  dec.cliques = maximal_cliques(g, /*require_chordal=*/true);
  return dec;
}

namespace {

Poly norm_power(int n, int tau) {
  Poly one = constant(n, 1.0);
  if (tau == 0) return one;
  Poly x2(n);
  for (int i = 0; i < n; ++i) {
    Exponent e(n);
    e.e[i] = 2;
    x2.add_term(e, 1.0);
  }
  Poly r = x2;
  for (int t = 1; t < tau; ++t) r = r * x2;
  return r;
}

SymPolyMatrix scale_matrix(const SymPolyMatrix& F, const Poly& w) {
  SymPolyMatrix out(F.nvars(), F.dim());
  for (int i = 0; i < F.dim(); ++i)
    for (int j = i; j < F.dim(); ++j) out.set_entry(i, j, F.entry(i, j) * w);
  return out;
}

void ms_blocks_into(const PMOProblem& prob, int r, const std::vector<std::vector<int>>& cliques,
                    AssemblyInput& in) {
  MonomialBasis mom_basis = full_basis(prob.n, r);
  for (size_t c = 0; c < cliques.size(); ++c) {
    in.blocks.push_back(
        moment_block_spec(mom_basis, cliques[c], "ms_moment_C" + std::to_string(c + 1)));
    for (int k = 0; k < prob.num_constraints(); ++k) {
      auto& con = prob.constraints[k];
      int dk = half_degree(con.mat.degree());
      MonomialBasis basis = full_basis(prob.n, r - dk);
      if (con.kind == ConstraintKind::inequality) {
        in.blocks.push_back(localizing_block_spec(
            k, con.mat.dim(), basis, cliques[c],
            "ms_localizing_C" + std::to_string(c + 1) + "_g" + std::to_string(k + 1)));
      } else {
        EqualitySpec eq;
        eq.constraint = k;
        for (auto& a : basis)
          for (int j : cliques[c])
            for (int qa = 0; qa < con.mat.dim(); ++qa) eq.rows.push_back({a, j, qa});
        in.eqspecs.push_back(std::move(eq));
      }
    }
  }
}

}  // namespace

AssembledSdp assemble_ms(const PMOProblem& prob, int r, const ObjectiveDecomposition& dec,
                         const AssemblyOptions& opts) {
  if (r < min_relaxation_order(prob))
    throw std::invalid_argument("relaxation order below r_min");
  AssemblyInput in;
  in.prob = &prob;
  ms_blocks_into(prob, r, dec.cliques, in);
  return assemble(in, opts);
}

AssembledSdp assemble_ms_ts(const PMOProblem& prob, int r, const ObjectiveDecomposition& dec,
                            ClosureKind closure, int sparse_order,
                            std::vector<TsState>* states_out, const AssemblyOptions& opts) {
  if (r < min_relaxation_order(prob))
    throw std::invalid_argument("relaxation order below r_min");
  AssemblyInput in;
  in.prob = &prob;
  if (states_out) states_out->clear();

  for (size_t c = 0; c < dec.cliques.size(); ++c) {
    auto& C = dec.cliques[c];
    // subproblem: principal objective submatrix on C, all constraints
    PMOProblem sub;
    sub.n = prob.n;
    sub.objective = SymPolyMatrix(prob.n, (int)C.size());
    for (size_t i = 0; i < C.size(); ++i)
      for (size_t j = i; j < C.size(); ++j)
        sub.objective.set_entry((int)i, (int)j, prob.objective.entry(C[i], C[j]));
    sub.constraints = prob.constraints;

    TsState ts = ts_iterate(sub, r, closure, sparse_order);
    if (states_out) states_out->push_back(ts);

    int m = sub.num_constraints();
    for (int k = 0; k <= m; ++k) {
      int q = k == 0 ? 1 : sub.constraints[k - 1].mat.dim();
      bool is_eq = k > 0 && sub.constraints[k - 1].kind == ConstraintKind::equality;
      auto cliques = ts.cliques(k, closure);
      int ci = 0;
      for (auto& clique : cliques) {
        if (is_eq) continue;  // equality rows handled densely below
        BlockSpec spec;
        spec.constraint = k - 1;
        spec.tag = "msts_C" + std::to_string(c + 1) + "_" +
                   (k == 0 ? std::string("moment") : "g" + std::to_string(k)) + "_c" +
                   std::to_string(ci++);
        for (int node : clique) {
          auto info = ts.node_info(k, node);
          int copy = info.copy_index;
          if (k == 0)
            spec.rows.push_back({info.monomial, C[copy], -1});
          else
            spec.rows.push_back({info.monomial, C[copy / q], copy % q});
        }
        in.blocks.push_back(std::move(spec));
      }
      if (is_eq) {
        EqualitySpec eq;
        eq.constraint = k - 1;
        for (auto& a : ts.basis[k])
          for (int j : C)
            for (int qa = 0; qa < q; ++qa) eq.rows.push_back({a, j, qa});
        in.eqspecs.push_back(std::move(eq));
      }
    }
  }
  return assemble(in, opts);
}

AssembledSdp homogeneous_multiplier(const PMOProblem& prob, int tau, int r,
                                    const AssemblyOptions& opts) {
  int p = prob.objective.dim();
  int degF = prob.objective.degree();
  if (degF % 2 != 0) throw std::invalid_argument("homogeneous multiplier needs even degree");
  for (auto& alpha : prob.objective.support())
    if (alpha.degree() != degF)
      throw std::invalid_argument("homogeneous multiplier needs a homogeneous objective");
  for (auto& c : prob.constraints) {
    int dg = c.mat.degree();
    for (auto& alpha : c.mat.support())
      if (alpha.degree() != dg || dg % 2 != 0)
        throw std::invalid_argument("homogeneous multiplier needs homogeneous even constraints");
  }

  Poly w = norm_power(prob.n, tau);
  SymPolyMatrix H0 = scale_matrix(prob.objective, w);
  SymPolyMatrix HI(prob.n, p);
  for (int i = 0; i < p; ++i) HI.set_entry(i, i, w);

  ObjectiveDecomposition dec = objective_cliques(prob.objective);

  if (2 * r < degF + 2 * tau)
    throw std::invalid_argument("homogeneous multiplier: 2r must cover deg F + 2 tau");
  AssemblyInput in;
  in.prob = &prob;
  ms_blocks_into(prob, r, dec.cliques, in);
  in.normalize = false;
  in.objective_override = &H0;
  in.functional_eqs.push_back({&HI, 1.0});

  EntrySupports sup = collect_entry_supports(prob);
  for (int u = 0; u < p; ++u)
    for (int v = u; v < p; ++v) {
      for (auto& a : H0.entry(u, v).support()) sup.obj[u][v - u].insert(a);
      for (auto& a : HI.entry(u, v).support()) sup.obj[u][v - u].insert(a);
    }
  in.symmetry_supports = sup;
  return assemble(in, opts);
}

ParametricAssembly assemble_parametric_ms(const problems::ParametricPmi& ppm, int tau, int r,
                                          bool term_sparsity, ClosureKind closure,
                                          int sparse_order, const AssemblyOptions& opts) {
  int n = ppm.n, p = ppm.base.dim();
  Poly w = norm_power(n, tau);
  SymPolyMatrix H0 = scale_matrix(ppm.base, w);
  std::vector<SymPolyMatrix> Hu;
  for (auto& P : ppm.params) Hu.push_back(scale_matrix(P, w));

  // union support matrix drives the clique pattern and term sparsity
  SymPolyMatrix pattern = ppm.base;
  for (auto& P : ppm.params) pattern = pattern + P;
  ObjectiveDecomposition dec = objective_cliques(pattern);

  PMOProblem shell;
  shell.n = n;
  shell.objective = pattern;

  AssemblyInput in;
  in.prob = &shell;
  in.normalize = false;
  in.objective_override = &H0;
  for (size_t u = 0; u < Hu.size(); ++u) in.functional_eqs.push_back({&Hu[u], ppm.cost[u]});

  SymPolyMatrix wpattern = scale_matrix(pattern, w);
  EntrySupports sup;
  sup.n = n;
  sup.p = p;
  sup.obj.resize(p);
  for (int u = 0; u < p; ++u) {
    sup.obj[u].resize(p - u);
    for (int v = u; v < p; ++v) sup.obj[u][v - u] = wpattern.entry(u, v).support();
  }
  in.symmetry_supports = sup;

  if (!term_sparsity) {
    ms_blocks_into(shell, r, dec.cliques, in);
  } else {
    for (size_t c = 0; c < dec.cliques.size(); ++c) {
      auto& C = dec.cliques[c];
      PMOProblem sub;
      sub.n = n;
      sub.objective = SymPolyMatrix(n, (int)C.size());
      for (size_t i = 0; i < C.size(); ++i)
        for (size_t j = i; j < C.size(); ++j)
          sub.objective.set_entry((int)i, (int)j, wpattern.entry(C[i], C[j]));
      TsState ts = ts_iterate(sub, r, closure, sparse_order);
      auto cliques = ts.cliques(0, closure);
      int ci = 0;
      for (auto& clique : cliques) {
        BlockSpec spec;
        spec.constraint = -1;
        spec.tag = "pmts_C" + std::to_string(c + 1) + "_c" + std::to_string(ci++);
        for (int node : clique) {
          auto info = ts.node_info(0, node);
          spec.rows.push_back({info.monomial, C[info.copy_index], -1});
        }
        in.blocks.push_back(std::move(spec));
      }
    }
  }

  ParametricAssembly out;
  out.sdp = assemble(in, opts);
  out.bound_sign = -1.0;
  return out;
}

std::vector<Constraint> split_single_constraint(const SymPolyMatrix& G, int n_total,
                                                int& next_aux) {
  int q = G.dim();
  SparsityGraph g = matrix_sparsity_graph(G);
  if (!is_chordal(g)) throw std::invalid_argument("constraint_split: sparsity graph not chordal");
  auto cliques = maximal_cliques(g, /*require_chordal=*/true);
  // clique-tree-ish order: attach each next clique by maximum intersection
  std::vector<std::vector<int>> ordered;
  {
    std::vector<bool> used(cliques.size(), false);
    ordered.push_back(cliques[0]);
    used[0] = true;
    while (ordered.size() < cliques.size()) {
      int best = -1, bw = -1;
      for (size_t c = 0; c < cliques.size(); ++c) {
        if (used[c]) continue;
        int w = 0;
        for (auto& o : ordered) {
          std::vector<int> inter;
          std::set_intersection(cliques[c].begin(), cliques[c].end(), o.begin(), o.end(),
                                std::back_inserter(inter));
          w = std::max(w, (int)inter.size());
        }
        if (w > bw) {
          bw = w;
          best = (int)c;
        }
      }
      ordered.push_back(cliques[best]);
      used[best] = true;
    }
  }
  int t = (int)ordered.size();

  // diagonal budget: occurrences of each vertex across cliques, in order
  std::vector<std::vector<int>> occur(q);
  for (int c = 0; c < t; ++c)
    for (int v : ordered[c]) occur[v].push_back(c);

  // aux variable per (vertex, consecutive-occurrence) pair
  std::map<std::pair<int, int>, int> aux_of;  // (vertex, occurrence index) -> aux var
  for (int v = 0; v < q; ++v)
    for (size_t o = 0; o + 1 < occur[v].size(); ++o) aux_of[{v, (int)o}] = next_aux++;

  // off-diagonal owner: first clique in order containing both endpoints
  auto owner = [&](int a, int b) {
    for (int c = 0; c < t; ++c) {
      bool ina = std::find(ordered[c].begin(), ordered[c].end(), a) != ordered[c].end();
      bool inb = std::find(ordered[c].begin(), ordered[c].end(), b) != ordered[c].end();
      if (ina && inb) return c;
    }
    return -1;
  };

  std::vector<Constraint> out;
  for (int c = 0; c < t; ++c) {
    auto& cl = ordered[c];
    SymPolyMatrix B(n_total, (int)cl.size());
    for (size_t i = 0; i < cl.size(); ++i) {
      for (size_t j = i; j < cl.size(); ++j) {
        int a = cl[i], b = cl[j];
        if (a == b) {
          auto& occ = occur[a];
          int oi = (int)(std::find(occ.begin(), occ.end(), c) - occ.begin());
          Poly diag(n_total);
          if (occ.size() == 1) {
            Poly gaa = G.entry(a, a);
            for (auto& [e, cv] : gaa.terms()) {
              Exponent ee(n_total);
              for (int vv = 0; vv < e.nvars(); ++vv) ee.e[vv] = e.e[vv];
              diag.add_term(ee, cv);
            }
          } else if (oi + 1 < (int)occ.size()) {
            // s_oi^2 (- s_{oi-1}^2)
            Exponent s(n_total);
            s.e[aux_of[{a, oi}]] = 2;
            diag.add_term(s, 1.0);
            if (oi > 0) {
              Exponent sp(n_total);
              sp.e[aux_of[{a, oi - 1}]] = 2;
              diag.add_term(sp, -1.0);
            }
          } else {
            // last occurrence: G_aa - s_{last}^2
            Poly gaa = G.entry(a, a);
            for (auto& [e, cv] : gaa.terms()) {
              Exponent ee(n_total);
              for (int vv = 0; vv < e.nvars(); ++vv) ee.e[vv] = e.e[vv];
              diag.add_term(ee, cv);
            }
            Exponent sp(n_total);
            sp.e[aux_of[{a, oi - 1}]] = 2;
            diag.add_term(sp, -1.0);
          }
          B.set_entry((int)i, (int)j, diag);
        } else {
          if (owner(a, b) != c) continue;
          Poly off(n_total);
          Poly gab = G.entry(a, b);
          for (auto& [e, cv] : gab.terms()) {
            Exponent ee(n_total);
            for (int vv = 0; vv < e.nvars(); ++vv) ee.e[vv] = e.e[vv];
            off.add_term(ee, cv);
          }
          B.set_entry((int)i, (int)j, off);
        }
      }
    }
    out.push_back({B, ConstraintKind::inequality});
  }
  return out;
}

ConstraintSplit constraint_split(const PMOProblem& prob) {
  // count auxiliaries first so the final variable count is known up front
  int n_aux = 0;
  std::vector<bool> do_split(prob.constraints.size(), false);
  for (size_t k = 0; k < prob.constraints.size(); ++k) {
    auto& c = prob.constraints[k];
    if (c.kind != ConstraintKind::inequality) continue;
    SparsityGraph g = matrix_sparsity_graph(c.mat);
    if (!is_chordal(g)) continue;
    auto cliques = maximal_cliques(g, true);
    if (cliques.size() < 2) continue;
    do_split[k] = true;
    std::map<int, int> occ;
    for (auto& cl : cliques)
      for (int v : cl) occ[v]++;
    for (auto& [v, cnt] : occ) n_aux += cnt - 1;
  }

  ConstraintSplit out;
  out.num_aux = n_aux;
  out.problem.n = prob.n + n_aux;
  // re-embed the objective into the widened variable space
  out.problem.objective = SymPolyMatrix(out.problem.n, prob.objective.dim());
  for (auto& [e, coeffs] : prob.objective.terms())
    for (int i = 0; i < prob.objective.dim(); ++i)
      for (int j = i; j < prob.objective.dim(); ++j) {
        double cv = coeffs[i * prob.objective.dim() + j];
        if (cv == 0) continue;
        Exponent ee(out.problem.n);
        for (int v = 0; v < prob.n; ++v) ee.e[v] = e.e[v];
        out.problem.objective.add_term(ee, i, j, cv);
      }

  int next_aux = prob.n;
  for (size_t k = 0; k < prob.constraints.size(); ++k) {
    auto& c = prob.constraints[k];
    if (!do_split[k]) {
      SymPolyMatrix B(out.problem.n, c.mat.dim());
      for (auto& [e, coeffs] : c.mat.terms())
        for (int i = 0; i < c.mat.dim(); ++i)
          for (int j = i; j < c.mat.dim(); ++j) {
            double cv = coeffs[i * c.mat.dim() + j];
            if (cv == 0) continue;
            Exponent ee(out.problem.n);
            for (int v = 0; v < prob.n; ++v) ee.e[v] = e.e[v];
            B.add_term(ee, i, j, cv);
          }
      out.problem.constraints.push_back({B, c.kind});
      out.provenance.push_back({(int)k});
    } else {
      auto blocks = split_single_constraint(c.mat, out.problem.n, next_aux);
      for (auto& b : blocks) {
        out.problem.constraints.push_back(b);
        out.provenance.push_back({(int)k});
      }
    }
  }
  return out;
}

std::vector<BlockSpec> multiplier_gram_sparsify(const BlockSpec& loc, const SymPolyMatrix& G) {
  SparsityGraph g = chordal_closure(matrix_sparsity_graph(G));
  auto cliques = maximal_cliques(g, true);
  std::vector<BlockSpec> out;
  if (cliques.size() <= 1) {
    out.push_back(loc);
    return out;
  }
  for (size_t c = 0; c < cliques.size(); ++c) {
    std::set<int> inc(cliques[c].begin(), cliques[c].end());
    BlockSpec spec;
    spec.constraint = loc.constraint;
    spec.tag = loc.tag + "_appx" + std::to_string(c + 1);
    for (auto& row : loc.rows)
      if (inc.count(row.qa)) spec.rows.push_back(row);
    out.push_back(std::move(spec));
  }
  return out;
}

}  // namespace pmo

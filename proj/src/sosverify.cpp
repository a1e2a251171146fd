#include "pmo/sosverify.hpp"

#include <map>

namespace pmo {

namespace {

SosVerifyResult run_verify(const SymPolyMatrix& F, const std::vector<MonomialBasis>& bases,
                           const std::vector<std::vector<int>>& cliques,
                           const SolverOptions& opts) {
  int p = F.dim();
  std::vector<int> offset(p + 1, 0);
  for (int j = 0; j < p; ++j) offset[j + 1] = offset[j] + (int)bases[j].size();
  auto col_of = [&](int node) {
    int j = 0;
    while (node >= offset[j + 1]) ++j;
    return j;
  };

  SosVerifyResult res;
  res.clique_nodes = cliques;

  BlockSDP sdp;
  int tau = sdp.new_var();
  sdp.objective[tau] = 1.0;  // min tau

  // Gram entry variables per clique; matching rows keyed by (u,v,delta)
  struct Key {
    int u, v;
    Exponent d;
    bool operator<(const Key& o) const {
      if (u != o.u) return u < o.u;
      if (v != o.v) return v < o.v;
      return d < o.d;
    }
  };
  std::map<Key, EqRow> match;

  std::vector<std::vector<int>> gram_vars(cliques.size());
  for (size_t c = 0; c < cliques.size(); ++c) {
    auto& cl = cliques[c];
    int dim = (int)cl.size();
    SdpBlock blk;
    blk.dim = dim;
    blk.tag = "gram_c" + std::to_string(c);
    for (int i = 0; i < dim; ++i) blk.coeffs.push_back({tau, i, i, 1.0});
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        int v = sdp.new_var();
        gram_vars[c].push_back(v);
        blk.coeffs.push_back({v, i, j, 1.0});
        // contribution to the coefficient matching
        int na = cl[i], nb = cl[j];
        int cu = col_of(na), cv = col_of(nb);
        Exponent prod = bases[cu][na - offset[cu]] + bases[cv][nb - offset[cv]];
        double coef;
        if (cu == cv)
          coef = (i == j) ? 1.0 : 2.0;
        else
          coef = 1.0;
        Key key{std::min(cu, cv), std::max(cu, cv), prod};
        match[key].terms.push_back({v, coef});
      }
    sdp.blocks.push_back(std::move(blk));
  }

  // right-hand sides from F; coefficients that no pair can produce make the
  // problem infeasible outright
  std::map<Key, double> rhs;
  for (int u = 0; u < p; ++u)
    for (int v = u; v < p; ++v)
      {
        Poly entry = F.entry(u, v);
        for (auto& [d, cv] : entry.terms()) rhs[{u, v, d}] = cv;
      }
  for (auto& [key, target] : rhs)
    if (!match.count(key)) {
      res.feasible = false;
      res.status = SolveStatus::infeasible;
      res.margin = 1e30;
      return res;
    }
  for (auto& [key, row] : match) {
    EqRow r = row;
    auto it = rhs.find(key);
    r.rhs = it == rhs.end() ? 0.0 : it->second;
    sdp.equalities.push_back(std::move(r));
  }

  SolverOptions o = opts;
  o.feas_tol = std::min(o.feas_tol, 1e-9);
  SdpSolution sol = solve_sdp(sdp, o);
  res.status = sol.status;
  res.margin = sol.primal_obj;
  res.feasible = (sol.status == SolveStatus::optimal || sol.status == SolveStatus::near_optimal) &&
                 sol.primal_obj <= 1e-7;
  for (size_t c = 0; c < cliques.size(); ++c) {
    int dim = (int)cliques[c].size();
    Eigen::MatrixXd A(dim, dim);
    int idx = 0;
    for (int i = 0; i < dim; ++i)
      for (int j = i; j < dim; ++j) {
        A(i, j) = A(j, i) = sol.x[gram_vars[c][idx++]];
      }
    res.gram_blocks.push_back(A);
  }
  return res;
}

}  // namespace

SosVerifyResult verify_sos_sparse(const SymPolyMatrix& F, const SparsityGraph& g,
                                  const std::vector<MonomialBasis>& bases,
                                  const SolverOptions& opts) {
  std::vector<std::vector<int>> cliques;
  if (is_chordal(g))
    cliques = maximal_cliques(g, true);
  else
    cliques = maximal_cliques(g, false);
  return run_verify(F, bases, cliques, opts);
}

SosVerifyResult verify_sos_dense(const SymPolyMatrix& F, const std::vector<MonomialBasis>& bases,
                                 const SolverOptions& opts) {
  int total = 0;
  for (auto& b : bases) total += (int)b.size();
  std::vector<int> all(total);
  std::iota(all.begin(), all.end(), 0);
  return run_verify(F, bases, {all}, opts);
}

Eigen::MatrixXd assemble_full_gram(const SosVerifyResult& res,
                                   const std::vector<MonomialBasis>& bases) {
  int total = 0;
  for (auto& b : bases) total += (int)b.size();
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(total, total);
  for (size_t c = 0; c < res.clique_nodes.size(); ++c) {
    auto& cl = res.clique_nodes[c];
    for (size_t i = 0; i < cl.size(); ++i)
      for (size_t j = 0; j < cl.size(); ++j) Q(cl[i], cl[j]) += res.gram_blocks[c](i, j);
  }
  return Q;
}

}  // namespace pmo

#include "pmo/tsp.hpp"

#include <map>

namespace pmo {

namespace {

using ExpSet = std::unordered_set<Exponent, ExponentHash>;

SparsityGraph close_graph(const SparsityGraph& g, ClosureKind closure) {
  return closure == ClosureKind::block ? block_closure(g) : chordal_closure(g);
}

}  // namespace

std::vector<std::vector<int>> TsState::cliques(int k, ClosureKind closure) const {
  if (closure == ClosureKind::block) {
    auto comps = graphs[k].connected_components();
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    return comps;
  }
  return maximal_cliques(graphs[k], /*require_chordal=*/true);
}

SparsityGraph tsp_unconstrained(const SymPolyMatrix& F,
                                const std::vector<MonomialBasis>& bases) {
  int p = F.dim();
  std::vector<int> offset(p + 1, 0);
  for (int j = 0; j < p; ++j) offset[j + 1] = offset[j] + (int)bases[j].size();
  SparsityGraph g(offset[p]);

  std::vector<std::vector<ExpSet>> supp(p, std::vector<ExpSet>(p));
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      auto s = F.entry(i, j).support();
      supp[i][j] = ExpSet(s.begin(), s.end());
    }

  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j)
      for (size_t a = 0; a < bases[i].size(); ++a) {
        size_t b0 = (i == j) ? a + 1 : 0;
        for (size_t b = b0; b < bases[j].size(); ++b) {
          Exponent prod = bases[i][a] + bases[j][b];
          if (supp[i][j].count(prod) > 0)
            g.add_edge(offset[i] + (int)a, offset[j] + (int)b);
        }
      }
  return g;
}

TsUnconstrained ts_iterate_unconstrained(const SymPolyMatrix& F,
                                         const std::vector<MonomialBasis>& bases,
                                         ClosureKind closure, int max_s) {
  int p = F.dim();
  TsUnconstrained st;
  st.bases = bases;
  std::vector<int> offset(p + 1, 0);
  for (int j = 0; j < p; ++j) offset[j + 1] = offset[j] + (int)bases[j].size();
  int nn = offset[p];
  st.column_of.resize(nn);
  st.mono_of.resize(nn);
  for (int j = 0; j < p; ++j)
    for (size_t a = 0; a < bases[j].size(); ++a) {
      st.column_of[offset[j] + (int)a] = j;
      st.mono_of[offset[j] + (int)a] = (int)a;
    }

  // activated supports C[i][j], i <= j
  std::vector<std::vector<ExpSet>> C(p, std::vector<ExpSet>(p));
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      for (auto& a : F.entry(i, j).support()) C[i][j].insert(a);
      if (i == j)
        for (auto& a : bases[i]) C[i][i].insert(a + a);
    }

  SparsityGraph g(nn);
  int prev_edges = -1;
  for (int s = 1; s <= max_s; ++s) {
    SparsityGraph ext = g;  // ascending chain: keep previous edges
    for (int na = 0; na < nn; ++na)
      for (int nb = na + 1; nb < nn; ++nb) {
        if (ext.has_edge(na, nb)) continue;
        int i = st.column_of[na], j = st.column_of[nb];
        Exponent prod = bases[i][st.mono_of[na]] + bases[j][st.mono_of[nb]];
        int lo = std::min(i, j), hi = std::max(i, j);
        bool edge = C[lo][hi].count(prod) > 0;
        if (!edge && i == j) edge = prod.all_even();
        if (edge) ext.add_edge(na, nb);
      }
    SparsityGraph closed = close_graph(ext, closure);
    if (closed.num_edges() == prev_edges) {
      st.stabilized = true;
      break;
    }
    g = closed;
    prev_edges = g.num_edges();
    st.s_reached = s;
    // refresh activated supports from the new edge set (self-pairs included)
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) C[i][j].clear();
    for (int na = 0; na < nn; ++na)
      for (int nb = na; nb < nn; ++nb) {
        if (na != nb && !g.has_edge(na, nb)) continue;
        int i = st.column_of[na], j = st.column_of[nb];
        Exponent prod = bases[i][st.mono_of[na]] + bases[j][st.mono_of[nb]];
        C[std::min(i, j)][std::max(i, j)].insert(prod);
      }
  }
  st.graph = g;
  return st;
}

TsState ts_iterate(const PMOProblem& prob, int r, ClosureKind closure, int max_s,
                   const std::optional<std::vector<int>>& clique_vars) {
  int n = prob.n, p = prob.objective.dim();
  int m = prob.num_constraints();

  std::vector<int> vars;
  if (clique_vars)
    vars = *clique_vars;
  else {
    vars.resize(n);
    std::iota(vars.begin(), vars.end(), 0);
  }
  std::vector<bool> mask(n, false);
  for (int v : vars) mask[v] = true;

  auto clique_basis = [&](int d) {
    MonomialBasis local = full_basis((int)vars.size(), d), out;
    for (auto& a : local) out.push_back(embed_exponent(a, vars, n));
    std::sort(out.begin(), out.end());
    return out;
  };

  TsState st;
  st.basis.resize(m + 1);
  st.copies.resize(m + 1);
  st.basis[0] = clique_basis(r);
  st.copies[0] = p;
  for (int k = 0; k < m; ++k) {
    int dk = half_degree(prob.constraints[k].mat.degree());
    st.basis[k + 1] = clique_basis(r - dk);
    st.copies[k + 1] = p * prob.constraints[k].mat.dim();
  }

  // constraint entry supports, with G_0 = [1]
  std::vector<int> q(m + 1, 1);
  std::vector<std::vector<std::vector<std::vector<Exponent>>>> gsupp(m + 1);
  gsupp[0] = {{{Exponent(n)}}};
  for (int k = 0; k < m; ++k) {
    int qk = prob.constraints[k].mat.dim();
    q[k + 1] = qk;
    gsupp[k + 1].assign(qk, std::vector<std::vector<Exponent>>(qk));
    for (int a = 0; a < qk; ++a)
      for (int b = 0; b < qk; ++b) {
        auto s = prob.constraints[k].mat.entry(a, b).support();
        gsupp[k + 1][a][b].assign(s.begin(), s.end());
      }
  }

  // activated supports C[i][j] (i <= j), over the full-space exponents
  std::vector<std::vector<ExpSet>> C(p, std::vector<ExpSet>(p));
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      for (auto& a : prob.objective.entry(i, j).support())
        if (supported_on(a, mask)) C[i][j].insert(a);
      if (i == j)
        for (auto& a : st.basis[0]) C[i][i].insert(a + a);
    }

  st.graphs.clear();
  for (int k = 0; k <= m; ++k)
    st.graphs.emplace_back((int)st.basis[k].size() * st.copies[k]);

  auto total_edges = [&]() {
    int e = 0;
    for (auto& g : st.graphs) e += g.num_edges();
    return e;
  };

  int prev_edges = -1;
  for (int s = 1; s <= max_s; ++s) {
    // support extension + closure, per constraint graph
    std::vector<SparsityGraph> next;
    for (int k = 0; k <= m; ++k) {
      const auto& B = st.basis[k];
      int cps = st.copies[k];
      SparsityGraph ext = st.graphs[k];
      int nb = (int)B.size();
      for (int ma = 0; ma < nb; ++ma)
        for (int mb = ma; mb < nb; ++mb) {
          Exponent ab = B[ma] + B[mb];
          for (int u = 0; u < cps; ++u) {
            int v0 = (ma == mb) ? u + 1 : 0;
            for (int v = v0; v < cps; ++v) {
              int na = st.node(k, ma, u), nbid = st.node(k, mb, v);
              if (ext.has_edge(na, nbid)) continue;
              int i = u / q[k], j = v / q[k];
              int abar = u % q[k], bbar = v % q[k];
              int lo = std::min(i, j), hi = std::max(i, j);
              bool edge = false;
              for (auto& gamma : gsupp[k][abar][bbar]) {
                if (C[lo][hi].count(ab + gamma)) {
                  edge = true;
                  break;
                }
              }
              if (edge) ext.add_edge(na, nbid);
            }
          }
        }
      next.push_back(close_graph(ext, closure));
    }

    int edges = 0;
    for (auto& g : next) edges += g.num_edges();
    if (edges == prev_edges) {
      st.stabilized = true;
      break;
    }
    st.graphs = next;
    prev_edges = edges;
    st.s_reached = s;

    // refresh the activated supports from all graphs (self-pairs included)
    for (int i = 0; i < p; ++i)
      for (int j = i; j < p; ++j) C[i][j].clear();
    for (int k = 0; k <= m; ++k) {
      const auto& B = st.basis[k];
      int cps = st.copies[k];
      int nb = (int)B.size();
      for (int ma = 0; ma < nb; ++ma)
        for (int mb = ma; mb < nb; ++mb) {
          Exponent ab = B[ma] + B[mb];
          for (int u = 0; u < cps; ++u) {
            int v0 = (ma == mb) ? u : 0;
            for (int v = v0; v < cps; ++v) {
              int na = st.node(k, ma, u), nbid = st.node(k, mb, v);
              if (na != nbid && !st.graphs[k].has_edge(na, nbid)) continue;
              int i = u / q[k], j = v / q[k];
              int abar = u % q[k], bbar = v % q[k];
              int lo = std::min(i, j), hi = std::max(i, j);
              for (auto& gamma : gsupp[k][abar][bbar]) C[lo][hi].insert(ab + gamma);
            }
          }
        }
    }
  }
  (void)total_edges;
  return st;
}

std::vector<std::vector<int>> sign_symmetry_blocks(const std::vector<std::vector<int>>& R,
                                                   const MonomialBasis& basis, int copies) {
  std::map<std::vector<int>, std::vector<int>> classes;
  for (size_t mono = 0; mono < basis.size(); ++mono) {
    std::vector<int> key;
    for (auto& theta : R) {
      int parity = 0;
      for (size_t i = 0; i < theta.size(); ++i) parity ^= (basis[mono].e[i] & theta[i] & 1);
      key.push_back(parity);
    }
    for (int c = 0; c < copies; ++c) classes[key].push_back((int)mono * copies + c);
  }
  std::vector<std::vector<int>> out;
  for (auto& [key, nodes] : classes) out.push_back(nodes);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return out;
}

}  // namespace pmo

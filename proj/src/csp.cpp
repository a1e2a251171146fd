#include "pmo/csp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pmo {

SparsityGraph csp_graph(const PMOProblem& prob) {
  SparsityGraph g(prob.n);
  for (auto& alpha : prob.objective.support()) {
    auto vars = alpha.support_vars();
    for (size_t i = 0; i < vars.size(); ++i)
      for (size_t j = i + 1; j < vars.size(); ++j) g.add_edge(vars[i], vars[j]);
  }
  for (auto& c : prob.constraints) {
    auto vars = c.mat.used_vars();
    for (size_t i = 0; i < vars.size(); ++i)
      for (size_t j = i + 1; j < vars.size(); ++j) g.add_edge(vars[i], vars[j]);
  }
  return g;
}

namespace {

// Clique-tree order: maximum-weight spanning tree on intersection sizes,
// then a traversal from the first clique. For cliques of a chordal graph
// this ordering satisfies RIP.
std::vector<int> clique_tree_order(const std::vector<std::vector<int>>& cliques) {
  int t = (int)cliques.size();
  std::vector<int> order;
  if (t == 0) return order;
  std::vector<bool> in(t, false);
  order.push_back(0);
  in[0] = true;
  auto isect = [&](int a, int b) {
    std::vector<int> r;
    std::set_intersection(cliques[a].begin(), cliques[a].end(), cliques[b].begin(),
                          cliques[b].end(), std::back_inserter(r));
    return (int)r.size();
  };
  while ((int)order.size() < t) {
    int best = -1, bestw = -1;
    for (int c = 0; c < t; ++c) {
      if (in[c]) continue;
      int w = 0;
      for (int o : order) w = std::max(w, isect(c, o));
      if (w > bestw) {
        bestw = w;
        best = c;
      }
    }
    order.push_back(best);
    in[best] = true;
  }
  return order;
}

}  // namespace

CliqueDecomposition decompose(const PMOProblem& prob) {
  SparsityGraph g = chordal_closure(csp_graph(prob));
  auto canonical = maximal_cliques(g, /*require_chordal=*/true);

  CliqueDecomposition dec;
  auto order = clique_tree_order(canonical);
  for (int idx : order) dec.cliques.push_back(canonical[idx]);

  dec.assignment.assign(prob.constraints.size(), -1);
  for (size_t k = 0; k < prob.constraints.size(); ++k) {
    auto vars = prob.constraints[k].mat.used_vars();
    // first clique in canonical order containing the constraint's variables
    for (size_t c = 0; c < canonical.size(); ++c) {
      if (std::includes(canonical[c].begin(), canonical[c].end(), vars.begin(), vars.end())) {
        // translate to the RIP-ordered index
        for (size_t p = 0; p < dec.cliques.size(); ++p)
          if (dec.cliques[p] == canonical[c]) {
            dec.assignment[k] = (int)p;
            break;
          }
        break;
      }
    }
    if (dec.assignment[k] < 0)
      throw std::logic_error("decompose: constraint variables not contained in any clique");
  }
  return dec;
}

bool rip_check(const std::vector<std::vector<int>>& cliques) {
  std::set<int> seen;
  for (size_t l = 0; l < cliques.size(); ++l) {
    if (l > 0) {
      std::vector<int> inter;
      for (int v : cliques[l])
        if (seen.count(v)) inter.push_back(v);
      bool ok = false;
      for (size_t s = 0; s < l && !ok; ++s)
        ok = std::includes(cliques[s].begin(), cliques[s].end(), inter.begin(), inter.end());
      if (!ok) return false;
    }
    for (int v : cliques[l]) seen.insert(v);
  }
  return true;
}

}  // namespace pmo

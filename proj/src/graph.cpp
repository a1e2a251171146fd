#include "pmo/graph.hpp"

#include <set>

namespace pmo {
namespace {

void bron_kerbosch(const SparsityGraph& g, std::vector<int>& R, std::vector<int> P,
                   std::vector<int> X, std::vector<std::vector<int>>& out) {
  if (P.empty() && X.empty()) {
    out.push_back(R);
    return;
  }
  // pivot: vertex of P u X with most neighbors in P
  int pivot = -1, best = -1;
  for (int list = 0; list < 2; ++list)
    for (int u : (list == 0 ? P : X)) {
      int cnt = 0;
      for (int v : P)
        if (g.has_edge(u, v) && u != v) ++cnt;
      if (cnt > best) {
        best = cnt;
        pivot = u;
      }
    }
  std::vector<int> candidates;
  for (int v : P)
    if (pivot < 0 || !(g.has_edge(pivot, v) && v != pivot)) candidates.push_back(v);
  for (int v : candidates) {
    std::vector<int> P2, X2;
    for (int w : P)
      if (w != v && g.has_edge(v, w)) P2.push_back(w);
    for (int w : X)
      if (g.has_edge(v, w) && w != v) X2.push_back(w);
    R.push_back(v);
    bron_kerbosch(g, R, P2, X2, out);
    R.pop_back();
    P.erase(std::find(P.begin(), P.end(), v));
    X.push_back(v);
  }
}

}  // namespace

std::vector<std::vector<int>> maximal_cliques(const SparsityGraph& g, bool require_chordal) {
  int n = g.num_nodes();
  std::vector<std::vector<int>> cliques;
  if (require_chordal) {
    if (!is_chordal(g)) throw std::invalid_argument("maximal_cliques: graph is not chordal");
    std::vector<int> peo = mcs_order(g);
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[peo[i]] = i;
    std::set<std::vector<int>> seen;
    for (int i = 0; i < n; ++i) {
      int v = peo[i];
      std::vector<int> c = {v};
      for (int w : g.neighbors(v))
        if (pos[w] > i) c.push_back(w);
      std::sort(c.begin(), c.end());
      // keep only cliques not contained in an earlier one
      bool contained = false;
      for (auto& other : seen)
        if (std::includes(other.begin(), other.end(), c.begin(), c.end())) {
          contained = true;
          break;
        }
      if (!contained) seen.insert(c);
    }
    // containment can also appear the other way around with MCS orders
    for (auto& c : seen) {
      bool contained = false;
      for (auto& other : seen)
        if (other.size() > c.size() &&
            std::includes(other.begin(), other.end(), c.begin(), c.end())) {
          contained = true;
          break;
        }
      if (!contained) cliques.push_back(c);
    }
  } else {
    std::vector<int> R, P(n), X;
    std::iota(P.begin(), P.end(), 0);
    bron_kerbosch(g, R, P, X, cliques);
    for (auto& c : cliques) std::sort(c.begin(), c.end());
  }
  std::sort(cliques.begin(), cliques.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  return cliques;
}

void write_dot(std::ostream& os, const SparsityGraph& g, const std::vector<std::string>& labels) {
  os << "graph sparsity {\n";
  for (int v = 0; v < g.num_nodes(); ++v) {
    os << "  n" << v;
    if ((int)labels.size() > v) os << " [label=\"" << labels[v] << "\"]";
    os << ";\n";
  }
  for (int a = 0; a < g.num_nodes(); ++a)
    for (int b = a + 1; b < g.num_nodes(); ++b)
      if (g.has_edge(a, b)) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
}

}  // namespace pmo

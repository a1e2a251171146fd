#pragma once

#include <algorithm>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pmo {

// Undirected graph with self-loops on nodes 0..n-1. Labels, when meaningful,
// are kept by the caller; adjacency is a dense symmetric bool matrix, which
// is plenty at the node counts seen here (a few thousand at most).
class SparsityGraph {
 public:
  SparsityGraph() : n_(0) {}
  explicit SparsityGraph(int n) : n_(n), adj_(n * n, 0) {}

  int num_nodes() const { return n_; }

  void add_edge(int a, int b) {
    adj_[a * n_ + b] = 1;
    adj_[b * n_ + a] = 1;
  }
  bool has_edge(int a, int b) const { return a == b || adj_[a * n_ + b] != 0; }

  int num_edges() const {  // distinct pairs, self-loops excluded
    int c = 0;
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) c += adj_[a * n_ + b];
    return c;
  }

  std::vector<int> neighbors(int a) const {
    std::vector<int> r;
    for (int b = 0; b < n_; ++b)
      if (b != a && adj_[a * n_ + b]) r.push_back(b);
    return r;
  }

  std::vector<std::vector<int>> connected_components() const {
    std::vector<int> comp(n_, -1);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n_; ++s) {
      if (comp[s] >= 0) continue;
      std::vector<int> stack = {s}, nodes;
      comp[s] = (int)comps.size();
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        nodes.push_back(v);
        for (int w = 0; w < n_; ++w)
          if (w != v && adj_[v * n_ + w] && comp[w] < 0) {
            comp[w] = comp[s];
            stack.push_back(w);
          }
      }
      std::sort(nodes.begin(), nodes.end());
      comps.push_back(std::move(nodes));
    }
    return comps;
  }

  bool operator==(const SparsityGraph& o) const { return n_ == o.n_ && adj_ == o.adj_; }

 private:
  int n_;
  std::vector<char> adj_;
};

// Every connected component becomes a complete subgraph. Idempotent.
inline SparsityGraph block_closure(const SparsityGraph& g) {
  SparsityGraph r = g;
  for (auto& comp : g.connected_components())
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = i + 1; j < comp.size(); ++j) r.add_edge(comp[i], comp[j]);
  return r;
}

// Greedy minimum-degree elimination; returns the elimination order and adds
// the fill edges. Ties break by node index, so the closure is deterministic.
inline SparsityGraph chordal_closure(const SparsityGraph& g, std::vector<int>* order_out = nullptr) {
  int n = g.num_nodes();
  SparsityGraph r = g;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b : g.neighbors(a)) adj[a][b] = 1;
  std::vector<char> eliminated(n, 0);
  std::vector<int> order;
  for (int step = 0; step < n; ++step) {
    int best = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
      if (eliminated[v]) continue;
      int deg = 0;
      for (int w = 0; w < n; ++w)
        if (!eliminated[w] && w != v && adj[v][w]) ++deg;
      if (best < 0 || deg < best_deg) {
        best = v;
        best_deg = deg;
      }
    }
    eliminated[best] = 1;
    order.push_back(best);
    std::vector<int> nb;
    for (int w = 0; w < n; ++w)
      if (!eliminated[w] && adj[best][w]) nb.push_back(w);
    for (size_t i = 0; i < nb.size(); ++i)
      for (size_t j = i + 1; j < nb.size(); ++j) {
        if (!adj[nb[i]][nb[j]]) {
          adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = 1;
          r.add_edge(nb[i], nb[j]);
        }
      }
  }
  if (order_out) *order_out = order;
  return r;
}

// Maximum-cardinality search; returns a candidate perfect elimination
// ordering (reversed MCS visit order).
inline std::vector<int> mcs_order(const SparsityGraph& g) {
  int n = g.num_nodes();
  std::vector<int> weight(n, 0), order;
  std::vector<char> visited(n, 0);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    for (int v = 0; v < n; ++v)
      if (!visited[v] && (best < 0 || weight[v] > weight[best])) best = v;
    visited[best] = 1;
    order.push_back(best);
    for (int w : g.neighbors(best))
      if (!visited[w]) ++weight[w];
  }
  std::reverse(order.begin(), order.end());
  return order;
}

// Chordality via MCS + zero-fill check on the elimination ordering.
inline bool is_chordal(const SparsityGraph& g) {
  int n = g.num_nodes();
  std::vector<int> peo = mcs_order(g);
  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[peo[i]] = i;
  for (int i = 0; i < n; ++i) {
    int v = peo[i];
    // later neighbors of v must form a clique; it is enough to check that
    // the earliest later neighbor is adjacent to all the others
    std::vector<int> later;
    for (int w : g.neighbors(v))
      if (pos[w] > i) later.push_back(w);
    if (later.empty()) continue;
    int m = later[0];
    for (int w : later)
      if (pos[w] < pos[m]) m = w;
    for (int w : later)
      if (w != m && !g.has_edge(m, w)) return false;
  }
  return true;
}

// Maximal cliques, sorted by (size desc, lexicographic). The chordal path is
// PEO-based and linear-ish; the general path is Bron-Kerbosch with pivoting.
std::vector<std::vector<int>> maximal_cliques(const SparsityGraph& g, bool require_chordal);

// DOT dump for debugging; labels optional.
void write_dot(std::ostream& os, const SparsityGraph& g, const std::vector<std::string>& labels);

}  // namespace pmo

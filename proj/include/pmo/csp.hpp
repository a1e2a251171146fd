#pragma once

#include <vector>

#include "pmo/graph.hpp"
#include "pmo/polymatrix.hpp"

namespace pmo {

// Variable cliques (RIP-compatible order) plus the constraint partition:
// assignment[k] is the clique index whose variables contain var(G_k).
struct CliqueDecomposition {
  std::vector<std::vector<int>> cliques;
  std::vector<int> assignment;
};

// CSP graph on the variables: {i,j} is an edge when i,j share a monomial of
// the objective or both occur in some constraint matrix.
SparsityGraph csp_graph(const PMOProblem& prob);

// Chordal-close the CSP graph, enumerate maximal cliques and order them by a
// clique-tree traversal so the running intersection property holds.
CliqueDecomposition decompose(const PMOProblem& prob);

// forall l: exists s <= l with I_{l+1} n (I_1 u ... u I_l) c I_s
bool rip_check(const std::vector<std::vector<int>>& cliques);

}  // namespace pmo

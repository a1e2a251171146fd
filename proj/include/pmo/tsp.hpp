#pragma once

#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pmo/basis.hpp"
#include "pmo/graph.hpp"
#include "pmo/polymatrix.hpp"

namespace pmo {

enum class ClosureKind { block, chordal };

// Node of a term-sparsity graph: a monomial together with its copy index
// ([alpha]^i with i in [p*q_k]).
struct TspNode {
  Exponent monomial;
  int copy_index;
};

// One graph per constraint index k = 0..m (k = 0 drives the moment matrix,
// with q_0 = 1, d_0 = 0). Nodes of graph k are basis[k] x copies[k], laid out
// monomial-major: node = mono * copies + copy.
struct TsState {
  std::vector<MonomialBasis> basis;  // per k
  std::vector<int> copies;           // p * q_k
  std::vector<SparsityGraph> graphs;
  int s_reached = 0;
  bool stabilized = false;

  int node(int k, int mono, int copy) const { return mono * copies[k] + copy; }
  TspNode node_info(int k, int id) const {
    return {basis[k][id / copies[k]], id % copies[k]};
  }
  // Cliques of graph k: components for block closure, maximal cliques for
  // chordal closure. Sorted (size desc, lex).
  std::vector<std::vector<int>> cliques(int k, ClosureKind closure) const;
};

// The TSP of a single matrix over explicit per-column bases (unconstrained
// setting). Nodes are the disjoint union of the bases, column-major blocks.
SparsityGraph tsp_unconstrained(const SymPolyMatrix& F, const std::vector<MonomialBasis>& bases);

// Unconstrained support-extension / chordal-extension iteration on the TSP.
struct TsUnconstrained {
  std::vector<MonomialBasis> bases;
  SparsityGraph graph;
  int s_reached = 0;
  bool stabilized = false;
  std::vector<int> column_of;  // node -> column j
  std::vector<int> mono_of;    // node -> index into bases[j]
};
TsUnconstrained ts_iterate_unconstrained(const SymPolyMatrix& F,
                                         const std::vector<MonomialBasis>& bases,
                                         ClosureKind closure, int max_s);

// Constrained two-step iteration of Section-4 style. Optionally restricted
// to a clique of variables (used by the CS+TS composition): bases are then
// built over those variables only and objective supports are filtered to
// monomials supported on them.
TsState ts_iterate(const PMOProblem& prob, int r, ClosureKind closure, int max_s,
                   const std::optional<std::vector<int>>& clique_vars = std::nullopt);

// GF(2) basis of the common sign symmetries, as 0/1 vectors.
// (declared in symmetry.hpp; re-exported here for discoverability)

// Partition of a node set under alpha ~ beta iff R'(alpha+beta) = 0 mod 2.
// Copy indices are ignored by the relation; classes carry all copies.
std::vector<std::vector<int>> sign_symmetry_blocks(const std::vector<std::vector<int>>& R,
                                                   const MonomialBasis& basis, int copies);

}  // namespace pmo

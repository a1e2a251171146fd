#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pmo/basis.hpp"
#include "pmo/graph.hpp"
#include "pmo/solver.hpp"
#include "pmo/tsp.hpp"

namespace pmo {

struct SosVerifyResult {
  bool feasible = false;
  double margin = 0.0;  // optimal tau of the shifted feasibility problem
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<std::vector<int>> clique_nodes;    // node ids per Gram block
  std::vector<Eigen::MatrixXd> gram_blocks;      // PSD Gram per clique (on success)
};

// Sparse SOS feasibility: find Q in S_+(G, 0), realized clique-wise
// (Q = sum E' A_c E with A_c PSD), matching F over the given per-column
// bases. Solved as  min tau : A_c + tau I PSD, matching ; feasible iff the
// optimal margin is <= 0.
SosVerifyResult verify_sos_sparse(const SymPolyMatrix& F, const SparsityGraph& g,
                                  const std::vector<MonomialBasis>& bases,
                                  const SolverOptions& opts = {});

// Dense Gram (single complete clique over the stacked bases).
SosVerifyResult verify_sos_dense(const SymPolyMatrix& F, const std::vector<MonomialBasis>& bases,
                                 const SolverOptions& opts = {});

// Total Gram assembled from the per-clique blocks, in column-block ordering,
// suitable for gram_reconstruct.
Eigen::MatrixXd assemble_full_gram(const SosVerifyResult& res,
                                   const std::vector<MonomialBasis>& bases);

}  // namespace pmo

#pragma once

#include <optional>
#include <vector>

#include "pmo/problems.hpp"
#include "pmo/relax.hpp"

namespace pmo {

// Row/column sparsity graph of a polynomial matrix (nodes = matrix indices).
SparsityGraph matrix_sparsity_graph(const SymPolyMatrix& F);

// Maximal cliques of the chordal closure of F's sparsity graph.
struct ObjectiveDecomposition {
  std::vector<std::vector<int>> cliques;
};
ObjectiveDecomposition objective_cliques(const SymPolyMatrix& F);

// Moment side of the clique-decomposed relaxation: per clique C_i, the
// moment and localizing blocks keep only objective rows in C_i.
AssembledSdp assemble_ms(const PMOProblem& prob, int r, const ObjectiveDecomposition& dec,
                         const AssemblyOptions& opts = {});
AssembledSdp assemble_ms_ts(const PMOProblem& prob, int r, const ObjectiveDecomposition& dec,
                            ClosureKind closure, int sparse_order,
                            std::vector<TsState>* states_out = nullptr,
                            const AssemblyOptions& opts = {});

// ||x||^{2tau} (F - lambda I) decomposition for homogeneous problems; the
// optimal value of the returned SDP is the eigenvalue bound directly.
AssembledSdp homogeneous_multiplier(const PMOProblem& prob, int tau, int r,
                                    const AssemblyOptions& opts = {});

// Linear-cost parametric PMI (min cost.theta s.t. P0 + sum theta_u P_u PSD),
// decomposed over the cliques of the pattern; reported bound is the negated
// SDP value. Optionally with term sparsity on each clique's Gram.
struct ParametricAssembly {
  AssembledSdp sdp;
  double bound_sign = -1.0;  // reported bound = bound_sign * optimal value
};
ParametricAssembly assemble_parametric_ms(const problems::ParametricPmi& ppm, int tau, int r,
                                          bool term_sparsity, ClosureKind closure,
                                          int sparse_order,
                                          const AssemblyOptions& opts = {});

// Constraint-matrix splitting along the clique tree of a chordal sparsity
// graph, introducing s^2 auxiliary diagonal entries.
struct ConstraintSplit {
  PMOProblem problem;                        // with auxiliary variables appended
  std::vector<std::vector<int>> provenance;  // new constraint -> original index
  int num_aux = 0;
};
ConstraintSplit constraint_split(const PMOProblem& prob);
std::vector<Constraint> split_single_constraint(const SymPolyMatrix& G, int n_total,
                                                int& next_aux);

// Appendix-style multiplier Gram sparsification: split one localizing block
// spec along the cliques of the constraint's chordal sparsity graph.
std::vector<BlockSpec> multiplier_gram_sparsify(const BlockSpec& loc, const SymPolyMatrix& G);

}  // namespace pmo

#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pmo/basis.hpp"
#include "pmo/blocksdp.hpp"
#include "pmo/csp.hpp"
#include "pmo/polymatrix.hpp"
#include "pmo/solver.hpp"
#include "pmo/symmetry.hpp"
#include "pmo/tsp.hpp"

namespace pmo {

// One row of a PSD block of the moment-side SDP: monomial alpha (full
// variable space), objective row pj in [p], constraint row qa (-1 for
// moment-matrix rows). The (row_a, row_b) entry of a moment block reads
// (S_{alpha_a+alpha_b})_{pj_a, pj_b}; localizing blocks additionally sum
// over the support of the constraint entry (qa_a, qa_b).
struct SpecRow {
  Exponent alpha;
  int pj = 0;
  int qa = -1;
};

struct BlockSpec {
  int constraint = -1;  // -1: moment block, else constraint index
  std::vector<SpecRow> rows;
  std::string tag;
};

// Rows of a localizing matrix pinned to zero (equality-kind constraints).
struct EqualitySpec {
  int constraint = 0;
  std::vector<SpecRow> rows;
};

// Slot table for the symmetric matrix unknowns S_delta.
struct MomentLayout {
  int n = 0, p = 0;
  std::map<Exponent, int> delta_id;
  std::vector<Exponent> deltas;
  std::vector<std::vector<int>> slots;  // per delta, p(p+1)/2 entries; -1 dropped

  int slot_index(int u, int v) const {  // u <= v
    return u * (2 * p - u + 1) / 2 + (v - u);
  }
};

struct AssemblyOptions {
  bool exploit_symmetry = true;  // drop S entries vanishing under the
                                 // problem's entry symmetries
};

struct AssembledSdp {
  BlockSDP sdp;
  MomentLayout layout;
  std::vector<BlockSpec> specs;
  std::vector<EqualitySpec> eqspecs;
};

// Generic assembler: moment/localizing PSD blocks from the row specs,
// equality rows, objective min L_S(F), normalization tr S_0 = 1 (unless
// replaced by explicit functional equalities).
struct AssemblyInput {
  const PMOProblem* prob = nullptr;
  std::vector<BlockSpec> blocks;
  std::vector<EqualitySpec> eqspecs;
  bool normalize = true;
  const SymPolyMatrix* objective_override = nullptr;
  // extra rows  L_S(H) = rhs
  std::vector<std::pair<const SymPolyMatrix*, double>> functional_eqs;
  std::optional<EntrySupports> symmetry_supports;  // defaults to prob's
};

AssembledSdp assemble(const AssemblyInput& in, const AssemblyOptions& opts = {});

// Row-spec builders.
BlockSpec moment_block_spec(const MonomialBasis& basis, const std::vector<int>& prows,
                            std::string tag);
BlockSpec localizing_block_spec(int k, int qk, const MonomialBasis& basis,
                                const std::vector<int>& prows, std::string tag);

// The standard pipelines.
AssembledSdp assemble_dense(const PMOProblem& prob, int r, const AssemblyOptions& opts = {},
                            const std::vector<MonomialBasis>* column_bases = nullptr);
AssembledSdp assemble_ts(const PMOProblem& prob, int r, const TsState& ts, ClosureKind closure,
                         const AssemblyOptions& opts = {});
AssembledSdp assemble_cs(const PMOProblem& prob, int r, const CliqueDecomposition& dec,
                         const AssemblyOptions& opts = {});
AssembledSdp assemble_cs_ts(const PMOProblem& prob, int r, const CliqueDecomposition& dec,
                            ClosureKind closure, int sparse_order,
                            std::vector<TsState>* states_out = nullptr,
                            const AssemblyOptions& opts = {});

// Moment values of a solved relaxation.
struct MomentSolution {
  int n = 0, p = 0;
  std::map<Exponent, Eigen::MatrixXd> S;
  Eigen::MatrixXd value(const Exponent& delta) const {
    auto it = S.find(delta);
    return it == S.end() ? Eigen::MatrixXd::Zero(p, p) : it->second;
  }
};

MomentSolution extract_moments(const AssembledSdp& asm_sdp, const SdpSolution& sol);

// Dense moment / localizing matrices built directly from moment values;
// these double as the independent evaluation route in tests.
Eigen::MatrixXd moment_matrix(const MomentSolution& ms, const MonomialBasis& basis,
                              const std::vector<int>& prows);
Eigen::MatrixXd localizing_matrix(const MomentSolution& ms, const SymPolyMatrix& G,
                                  const MonomialBasis& basis, const std::vector<int>& prows);

// L_S(F) evaluated directly from moment values.
double riesz_functional(const MomentSolution& ms, const SymPolyMatrix& F);

std::vector<int> all_rows(int p);

}  // namespace pmo

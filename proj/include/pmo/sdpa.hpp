#pragma once

#include <string>

#include "pmo/blocksdp.hpp"
#include "pmo/solver.hpp"

namespace pmo {

// SDPA sparse format (.dat-s):
//   m / nBLOCK / bLOCKsTRUCT (negative entries are diagonal blocks) /
//   c vector / "matno blkno i j value" quintuples, upper triangle, 1-based.
// Equality rows are encoded as a trailing diagonal block of paired
// inequalities.
void export_sdpa(const BlockSDP& sdp, const std::string& path);

// Fragment of a solution parsed from SDPA-style output: objValPrimal,
// objValDual and xVec (when present).
struct SdpaSolutionFragment {
  bool has_primal = false, has_dual = false, has_x = false;
  double primal_obj = 0.0, dual_obj = 0.0;
  std::vector<double> x;
};

SdpaSolutionFragment import_sdpa_solution(const std::string& path);

// Minimal SDPA-style output file for a solved instance (round trips through
// import_sdpa_solution).
void write_sdpa_solution(const SdpSolution& sol, const std::string& path);

}  // namespace pmo

#pragma once

#include <Eigen/Dense>
#include <vector>

#include "pmo/blocksdp.hpp"

namespace pmo {

enum class SolveStatus { optimal, near_optimal, infeasible, unbounded, numerical_failure };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::near_optimal: return "near-optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    default: return "numerical-failure";
  }
}

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  int max_iter = 200;
  double step_frac = 0.98;
  bool verbose = false;
};

struct SdpSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  std::vector<double> x;
  std::vector<Eigen::MatrixXd> block_primal;  // X_b = sum x_i A_i - C
  std::vector<Eigen::MatrixXd> block_dual;    // Y_b
  std::vector<double> eq_duals;
  int iterations = 0;
  double primal_infeas = 0.0;
  double dual_infeas = 0.0;
};

// Primal-dual path-following with Nesterov-Todd scaling and a Mehrotra
// predictor-corrector. Deterministic: fixed ordering, no randomization.
SdpSolution solve_sdp(const BlockSDP& sdp, const SolverOptions& opts = {});

}  // namespace pmo

#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pmo/extract.hpp"
#include "pmo/msp.hpp"
#include "pmo/relax.hpp"

namespace pmo {

enum class Pipeline { newton, ts, cs, ms_objective, ms_constraint, appendix_gram };

enum class SolverMode { embedded, sdpa_export };

struct RunConfig {
  int order = -1;                    // relaxation order r (-1: r_min)
  int sparse_order = 1;              // s for the TS iteration
  ClosureKind closure = ClosureKind::block;
  std::set<Pipeline> pipelines;
  int tau = 0;                       // homogeneous multiplier power
  SolverMode solver = SolverMode::embedded;
  double rank_tol = 1e-6;
  bool extract = true;
  bool exploit_symmetry = true;
  SolverOptions solver_opts;
  std::string sdpa_path;             // for SolverMode::sdpa_export
  std::string dot_path;              // optional DOT dump of the CSP graph
};

struct Report {
  double bound = 0.0;
  int mb = 0;
  std::map<int, int> block_histogram;
  int num_vars = 0;
  double wall_ms = 0.0;
  std::string solver_status;
  int iterations = 0;
  std::string certificate;  // certification status text
  std::vector<std::vector<double>> minimizers;
  std::vector<std::string> pipelines_fired;
  int stabilized_at = 0;    // TS stabilization step actually reached (0: n/a)
  bool ts_stabilized = false;
  double primal_obj = 0.0, dual_obj = 0.0;
  std::string notes;
};

Report run(const PMOProblem& prob, const RunConfig& cfg);

std::string report_to_json(const Report& rep);
std::string report_pretty(const Report& rep);

}  // namespace pmo

#include "pmo/pipeline.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pmo/sdpa.hpp"

namespace pmo {

namespace {

const char* pipeline_name(Pipeline p) {
  switch (p) {
    case Pipeline::newton: return "newton";
    case Pipeline::ts: return "ts";
    case Pipeline::cs: return "cs";
    case Pipeline::ms_objective: return "ms-objective";
    case Pipeline::ms_constraint: return "ms-constraint";
    default: return "appendix-gram";
  }
}

}  // namespace

Report run(const PMOProblem& input, const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  for (auto p : cfg.pipelines) rep.pipelines_fired.push_back(pipeline_name(p));

  auto has = [&](Pipeline p) { return cfg.pipelines.count(p) > 0; };

  // stage 1: constraint-matrix splitting
  PMOProblem prob = input;
  if (has(Pipeline::ms_constraint)) {
    ConstraintSplit split = constraint_split(prob);
    prob = split.problem;
    if (split.num_aux > 0)
      rep.notes += "constraint split introduced " + std::to_string(split.num_aux) +
                   " auxiliary variables; ";
  }

  int rmin = min_relaxation_order(prob);
  int r = cfg.order < 0 ? rmin : cfg.order;
  if (r < rmin)
    throw std::invalid_argument("order " + std::to_string(r) + " below r_min=" +
                                std::to_string(rmin));
  if (has(Pipeline::ts) && cfg.sparse_order < 1)
    throw std::invalid_argument("sparse order must be >= 1 when ts is enabled");

  AssemblyOptions aopts;
  aopts.exploit_symmetry = cfg.exploit_symmetry;

  // stage 2/3: decomposition + term sparsity + assembly
  AssembledSdp assembled;
  std::optional<CliqueDecomposition> dec;
  bool can_extract = cfg.extract;

  if (has(Pipeline::ms_objective)) {
    if (has(Pipeline::cs))
      throw std::invalid_argument("ms-objective combined with cs is not supported");
    ObjectiveDecomposition od = objective_cliques(prob.objective);
    if (cfg.tau > 0) {
      if (has(Pipeline::ts))
        throw std::invalid_argument("tau > 0 with ts goes through the parametric interface");
      assembled = homogeneous_multiplier(prob, cfg.tau, r, aopts);
    } else if (has(Pipeline::ts)) {
      std::vector<TsState> states;
      assembled = assemble_ms_ts(prob, r, od, cfg.closure, cfg.sparse_order, &states, aopts);
      for (auto& st : states) {
        rep.stabilized_at = std::max(rep.stabilized_at, st.s_reached);
        rep.ts_stabilized = rep.ts_stabilized || st.stabilized;
      }
    } else {
      assembled = assemble_ms(prob, r, od, aopts);
    }
    can_extract = false;  // row-restricted moments carry no global measure
  } else if (has(Pipeline::cs)) {
    dec = decompose(prob);
    if (has(Pipeline::ts)) {
      std::vector<TsState> states;
      assembled = assemble_cs_ts(prob, r, *dec, cfg.closure, cfg.sparse_order, &states, aopts);
      bool all_st = true;
      for (auto& st : states) {
        rep.stabilized_at = std::max(rep.stabilized_at, st.s_reached);
        all_st = all_st && st.stabilized;
      }
      rep.ts_stabilized = all_st;
      can_extract = false;  // TS-restricted moments are not full clique moments
    } else {
      assembled = assemble_cs(prob, r, *dec, aopts);
    }
  } else if (has(Pipeline::ts)) {
    TsState ts = ts_iterate(prob, r, cfg.closure, cfg.sparse_order);
    rep.stabilized_at = ts.s_reached;
    rep.ts_stabilized = ts.stabilized;
    assembled = assemble_ts(prob, r, ts, cfg.closure, aopts);
    can_extract = false;
  } else if (has(Pipeline::newton)) {
    if (!prob.constraints.empty())
      throw std::invalid_argument("newton basis reduction applies to unconstrained problems");
    // the eigenvalue shift adds a constant to every diagonal entry
    SymPolyMatrix shifted = prob.objective;
    for (int j = 0; j < shifted.dim(); ++j) shifted.add_term(Exponent(prob.n), j, j, 1.0);
    auto bases = newton_bases(shifted);
    assembled = assemble_dense(prob, r, aopts, &bases);
  } else {
    assembled = assemble_dense(prob, r, aopts);
  }

  if (has(Pipeline::appendix_gram)) {
    // split localizing blocks along each constraint's chordal matrix pattern
    AssemblyInput in;
    in.prob = &prob;
    std::vector<BlockSpec> blocks;
    for (auto& spec : assembled.specs) {
      if (spec.constraint < 0) {
        blocks.push_back(spec);
        continue;
      }
      for (auto& piece :
           multiplier_gram_sparsify(spec, prob.constraints[spec.constraint].mat))
        blocks.push_back(piece);
    }
    in.blocks = blocks;
    in.eqspecs = assembled.eqspecs;
    assembled = assemble(in, aopts);
  }

  BlockStats stats = block_stats(assembled.sdp);
  rep.mb = stats.mb;
  rep.block_histogram = stats.histogram;
  rep.num_vars = stats.num_vars;

  if (cfg.solver == SolverMode::sdpa_export) {
    export_sdpa(assembled.sdp, cfg.sdpa_path.empty() ? "problem.dat-s" : cfg.sdpa_path);
    rep.solver_status = "exported";
    rep.certificate = "n/a (exported)";
    auto t1 = std::chrono::steady_clock::now();
    rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return rep;
  }

  SdpSolution sol = solve_sdp(assembled.sdp, cfg.solver_opts);
  rep.solver_status = to_string(sol.status);
  rep.iterations = sol.iterations;
  rep.primal_obj = sol.primal_obj;
  rep.dual_obj = sol.dual_obj;
  rep.bound = sol.primal_obj;

  // stage 4: flatness, extraction, merging
  if (can_extract &&
      (sol.status == SolveStatus::optimal || sol.status == SolveStatus::near_optimal)) {
    MomentSolution ms = extract_moments(assembled, sol);
    CliqueDecomposition single;
    if (!dec) {
      std::vector<int> allv(prob.n);
      std::iota(allv.begin(), allv.end(), 0);
      single.cliques = {allv};
      single.assignment.assign(prob.constraints.size(), 0);
    }
    const CliqueDecomposition& d = dec ? *dec : single;

    bool all_flat = true;
    std::vector<ExtractionResult> per_clique;
    for (size_t l = 0; l < d.cliques.size(); ++l) {
      int dK = 1;
      for (size_t k = 0; k < prob.constraints.size(); ++k)
        if (d.assignment[k] == (int)l)
          dK = std::max(dK, half_degree(prob.constraints[k].mat.degree()));
      FlatnessReport f = flatness_check(ms, d.cliques[l], r, dK, cfg.rank_tol);
      if (!f.flat) {
        all_flat = false;
        rep.certificate = "bound only (not certified): flatness failed on clique " +
                          std::to_string(l + 1) + " (ranks " + std::to_string(f.rank_high) +
                          "/" + std::to_string(f.rank_low) + ")";
        break;
      }
      per_clique.push_back(extract_atoms(ms, d.cliques[l], r, cfg.rank_tol));
    }
    if (all_flat) {
      Certificate cert = merge_cliques(prob, ms, d, per_clique, r, rep.bound, cfg.rank_tol);
      rep.certificate = to_string(cert.status);
      if (!cert.detail.empty()) rep.certificate += std::string(": ") + cert.detail;
      for (auto& x : cert.minimizers) {
        std::vector<double> pt(x.data(), x.data() + std::min<int>((int)x.size(), input.n));
        rep.minimizers.push_back(pt);
      }
    }
  } else if (!can_extract) {
    rep.certificate = "bound only (extraction disabled for this pipeline)";
  } else {
    rep.certificate = "bound only (solver status " + std::string(to_string(sol.status)) + ")";
  }

  auto t1 = std::chrono::steady_clock::now();
  rep.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rep;
}

std::string report_to_json(const Report& rep) {
  nlohmann::json j;
  j["bound"] = rep.bound;
  j["mb"] = rep.mb;
  nlohmann::json hist = nlohmann::json::object();
  for (auto& [dim, cnt] : rep.block_histogram) hist[std::to_string(dim)] = cnt;
  j["block_histogram"] = hist;
  j["num_vars"] = rep.num_vars;
  j["wall_ms"] = rep.wall_ms;
  j["solver_status"] = rep.solver_status;
  j["iterations"] = rep.iterations;
  j["certificate"] = rep.certificate;
  j["minimizers"] = rep.minimizers;
  j["pipelines"] = rep.pipelines_fired;
  j["ts_stabilized_at"] = rep.stabilized_at;
  j["ts_stabilized"] = rep.ts_stabilized;
  j["primal_obj"] = rep.primal_obj;
  j["dual_obj"] = rep.dual_obj;
  if (!rep.notes.empty()) j["notes"] = rep.notes;
  return j.dump(2);
}

std::string report_pretty(const Report& rep) {
  std::ostringstream os;
  os.precision(10);
  os << "bound        " << rep.bound << "\n";
  os << "mb           " << rep.mb << "\n";
  os << "blocks       ";
  for (auto& [dim, cnt] : rep.block_histogram) os << cnt << "x" << dim << " ";
  os << "\n";
  os << "variables    " << rep.num_vars << "\n";
  os << "status       " << rep.solver_status << " (" << rep.iterations << " iterations)\n";
  os << "certificate  " << rep.certificate << "\n";
  if (!rep.minimizers.empty()) {
    os << "minimizers\n";
    for (auto& x : rep.minimizers) {
      os << "  [";
      for (size_t i = 0; i < x.size(); ++i) os << x[i] << (i + 1 < x.size() ? ", " : "");
      os << "]\n";
    }
  }
  if (rep.stabilized_at > 0)
    os << "ts           s=" << rep.stabilized_at
       << (rep.ts_stabilized ? " (stabilized)" : " (not stabilized)") << "\n";
  os << "pipelines    ";
  if (rep.pipelines_fired.empty()) os << "dense";
  for (auto& p : rep.pipelines_fired) os << p << " ";
  os << "\n";
  os << "time         " << rep.wall_ms / 1000.0 << " s\n";
  if (!rep.notes.empty()) os << "notes        " << rep.notes << "\n";
  return os.str();
}

}  // namespace pmo

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "pmo/graph.hpp"
#include "pmo/jsonio.hpp"
#include "pmo/pipeline.hpp"
#include "pmo/problems.hpp"

namespace fs = std::filesystem;

namespace {

pmo::RunConfig parse_config(int order, int sparse_order, const std::string& closure,
                            const std::vector<std::string>& pipelines, int tau,
                            const std::string& solver, double tol_rank, bool extract,
                            const std::string& sdpa_out) {
  pmo::RunConfig cfg;
  cfg.order = order;
  cfg.sparse_order = sparse_order;
  if (closure == "block")
    cfg.closure = pmo::ClosureKind::block;
  else if (closure == "chordal")
    cfg.closure = pmo::ClosureKind::chordal;
  else
    throw CLI::ValidationError("--closure must be block or chordal");
  for (auto& p : pipelines) {
    if (p == "newton")
      cfg.pipelines.insert(pmo::Pipeline::newton);
    else if (p == "ts")
      cfg.pipelines.insert(pmo::Pipeline::ts);
    else if (p == "cs")
      cfg.pipelines.insert(pmo::Pipeline::cs);
    else if (p == "ms-objective")
      cfg.pipelines.insert(pmo::Pipeline::ms_objective);
    else if (p == "ms-constraint")
      cfg.pipelines.insert(pmo::Pipeline::ms_constraint);
    else if (p == "appendix-gram")
      cfg.pipelines.insert(pmo::Pipeline::appendix_gram);
    else if (p == "ms") {
      cfg.pipelines.insert(pmo::Pipeline::ms_objective);
      cfg.pipelines.insert(pmo::Pipeline::ms_constraint);
    } else if (!p.empty())
      throw CLI::ValidationError("unknown pipeline \"" + p + "\"");
  }
  cfg.tau = tau;
  if (solver == "embedded")
    cfg.solver = pmo::SolverMode::embedded;
  else if (solver == "export")
    cfg.solver = pmo::SolverMode::sdpa_export;
  else
    throw CLI::ValidationError("--solver must be embedded or export");
  cfg.rank_tol = tol_rank;
  cfg.extract = extract;
  cfg.sdpa_path = sdpa_out;
  return cfg;
}

int run_one(const std::string& path, const pmo::RunConfig& cfg, bool pretty,
            const std::string& out, const std::string& dot) {
  pmo::PMOProblem prob = pmo::load_problem(path);
  if (!dot.empty()) {
    std::ofstream os(dot);
    auto g = pmo::csp_graph(prob);
    std::vector<std::string> labels;
    for (int i = 0; i < prob.n; ++i) labels.push_back("x" + std::to_string(i + 1));
    pmo::write_dot(os, g, labels);
  }
  pmo::Report rep = pmo::run(prob, cfg);
  std::string text = pretty ? pmo::report_pretty(rep) : pmo::report_to_json(rep) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out);
    os << text;
  }
  return 0;
}

void generate_bundled(const std::string& dir) {
  using namespace pmo::problems;
  fs::create_directories(dir);
  auto save = [&](const pmo::PMOProblem& p, const std::string& name) {
    pmo::save_problem(p, dir + "/" + name + ".json");
    std::cout << "wrote " << dir << "/" << name << ".json\n";
  };
  save(example_1(), "example_1");
  for (int n = 5; n <= 13; n += 2) save(example_2(n), "example_2_n" + std::to_string(n));
  save(example_4(), "example_4");
  save(example_6(), "example_6");
  save(example_7(), "example_7");
  for (int n = 5; n <= 13; n += 2) save(example_9(n), "example_9_n" + std::to_string(n));
  save(block_two_moment(), "two_block");
  save(bivariate_pair(), "bivariate");
  save(cs_merge_a(), "cs_merge_a");
  save(cs_merge_b(), "cs_merge_b");
  save(cs_counterexample(), "cs_counterexample");
  pmo::PMOProblem newt;
  newt.n = 3;
  newt.objective = newton_threevar();
  save(newt, "newton_threevar");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polynomial matrix optimization via the sparse moment-SOS hierarchy"};
  app.require_subcommand(1);

  std::string problem_path, out, dot, sdpa_out = "";
  int order = -1, sparse_order = 1, tau = 0, jobs = 1;
  std::string closure = "block", solver = "embedded";
  std::vector<std::string> pipelines;
  double tol_rank = 1e-6;
  bool pretty = false, no_extract = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-r,--order", order, "relaxation order (default: minimal)");
    cmd->add_option("-s,--sparse-order", sparse_order, "term sparsity order");
    cmd->add_option("--closure", closure, "chordal extension: block|chordal");
    cmd->add_option("--pipeline", pipelines,
                    "sparsity pipelines: newton,ts,cs,ms,ms-objective,ms-constraint,appendix-gram")
        ->delimiter(',');
    cmd->add_option("--tau", tau, "homogeneous multiplier power");
    cmd->add_option("--solver", solver, "embedded|export");
    cmd->add_option("--tol-rank", tol_rank, "rank tolerance for flatness/extraction");
    cmd->add_flag("--no-extract", no_extract, "skip minimizer extraction");
    cmd->add_option("--sdpa-out", sdpa_out, "SDPA file path for --solver export");
    cmd->add_option("-o,--output", out, "write the report to a file");
    cmd->add_flag("--pretty", pretty, "human-readable report");
    cmd->add_option("--dot", dot, "write the CSP graph in DOT format");
  };

  auto* solve = app.add_subcommand("solve", "solve one problem file");
  solve->add_option("problem", problem_path, "problem JSON file")->required();
  add_common(solve);

  auto* batch = app.add_subcommand("batch", "run every problem JSON in a directory");
  std::string batch_dir;
  batch->add_option("dir", batch_dir, "directory of problem files")->required();
  batch->add_option("-j,--jobs", jobs, "concurrent runs");
  add_common(batch);

  auto* gen = app.add_subcommand("gen", "write the bundled example problems");
  std::string gen_dir = "problems";
  gen->add_option("dir", gen_dir, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      generate_bundled(gen_dir);
      return 0;
    }
    pmo::RunConfig cfg = parse_config(order, sparse_order, closure, pipelines, tau, solver,
                                      tol_rank, !no_extract, sdpa_out);
    if (solve->parsed()) return run_one(problem_path, cfg, pretty, out, dot);

    // batch mode
    std::vector<std::string> files;
    for (auto& entry : fs::directory_iterator(batch_dir))
      if (entry.path().extension() == ".json") files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());
    std::atomic<size_t> next{0};
    std::mutex out_mutex;
    auto worker = [&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= files.size()) break;
        try {
          pmo::PMOProblem prob = pmo::load_problem(files[i]);
          pmo::Report rep = pmo::run(prob, cfg);
          std::lock_guard<std::mutex> lk(out_mutex);
          std::cout << files[i] << ": bound " << rep.bound << " mb " << rep.mb << " ("
                    << rep.solver_status << ", " << rep.wall_ms / 1000.0 << " s)\n";
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lk(out_mutex);
          std::cout << files[i] << ": error: " << e.what() << "\n";
        }
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

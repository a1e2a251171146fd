#include <random>

#include "doctest.h"
#include "pmo/problems.hpp"
#include "pmo/relax.hpp"

using namespace pmo;

namespace {

// evaluate one assembled PSD block at a decision vector
Eigen::MatrixXd block_value(const SdpBlock& blk, const std::vector<double>& x) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(blk.dim, blk.dim);
  for (auto& e : blk.coeffs) {
    M(e.row, e.col) += e.val * x[e.var];
    if (e.row != e.col) M(e.col, e.row) += e.val * x[e.var];
  }
  for (auto& e : blk.constants) {
    M(e.row, e.col) -= e.val;
    if (e.row != e.col) M(e.col, e.row) -= e.val;
  }
  return M;
}

double solve_bound(const AssembledSdp& a) {
  SdpSolution sol = solve_sdp(a.sdp);
  bool converged =
      sol.status == SolveStatus::optimal || sol.status == SolveStatus::near_optimal;
  REQUIRE(converged);
  return sol.primal_obj;
}

}  // namespace

TEST_CASE("constant objective at order zero gives the smallest eigenvalue") {
  PMOProblem prob;
  prob.n = 1;
  prob.objective = SymPolyMatrix(1, 2);
  prob.objective.add_term(Exponent(1), 0, 0, 3.0);
  prob.objective.add_term(Exponent(1), 1, 1, 5.0);
  AssembledSdp a = assemble_dense(prob, 0);
  CHECK(block_stats(a.sdp).mb == 2);
  CHECK(solve_bound(a) == doctest::Approx(3.0).epsilon(1e-7));
}

TEST_CASE("dense block dimensions match the closed form") {
  PMOProblem p1 = problems::example_1();
  CHECK(block_stats(assemble_dense(p1, 2).sdp).mb == 105);
  CHECK(block_stats(assemble_dense(p1, 3).sdp).mb == 280);
  CHECK(block_stats(assemble_dense(p1, 4).sdp).mb == 630);

  PMOProblem p4 = problems::example_4();
  auto st = block_stats(assemble_dense(p4, 2).sdp);
  CHECK(st.mb == 60);  // localizing block p*q*C(6,1) dominates

  PMOProblem p9 = problems::example_9(5);
  CHECK(block_stats(assemble_dense(p9, 4).sdp).mb == 252);
}

TEST_CASE("order below r_min is rejected") {
  CHECK_THROWS(assemble_dense(problems::example_1(), 1));
}

TEST_CASE("assembled maps are exact against direct moment evaluation") {
  PMOProblem prob = problems::example_1();
  AssemblyOptions opts;
  opts.exploit_symmetry = false;  // keep every entry so the oracle sees all
  AssembledSdp a = assemble_dense(prob, 2, opts);

  std::mt19937 gen(9);
  std::uniform_real_distribution<double> uni(-1, 1);
  std::vector<double> x(a.sdp.num_vars);
  for (auto& v : x) v = uni(gen);
  MomentSolution ms = extract_moments(a, {SolveStatus::optimal, 0, 0, x, {}, {}, {}, 0, 0, 0});

  // objective route 1: assembled c'x; route 2: direct Riesz functional
  double via_c = 0;
  for (int i = 0; i < a.sdp.num_vars; ++i) via_c += a.sdp.objective[i] * x[i];
  double direct = riesz_functional(ms, prob.objective);
  CHECK(via_c == doctest::Approx(direct).epsilon(1e-12));

  // block route: assembled pencil equals the matrix built from moments
  auto prows = all_rows(prob.objective.dim());
  MonomialBasis basis2 = full_basis(prob.n, 2), basis1 = full_basis(prob.n, 1);
  Eigen::MatrixXd M0 = block_value(a.sdp.blocks[0], x);
  Eigen::MatrixXd M0_direct = moment_matrix(ms, basis2, prows);
  CHECK((M0 - M0_direct).cwiseAbs().maxCoeff() <= 1e-12);

  for (int k = 0; k < 2; ++k) {
    Eigen::MatrixXd L = block_value(a.sdp.blocks[1 + k], x);
    Eigen::MatrixXd L_direct = localizing_matrix(ms, prob.constraints[k].mat, basis1, prows);
    CHECK((L - L_direct).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("example_1 dense bound at r=2 reproduces the table") {
  AssembledSdp a = assemble_dense(problems::example_1(), 2);
  double bound = solve_bound(a);
  CHECK(bound == doctest::Approx(-2.2766).epsilon(2e-3));
}

TEST_CASE("symmetry reduction does not change the bound") {
  PMOProblem prob = problems::block_two_moment();
  AssemblyOptions no_sym;
  no_sym.exploit_symmetry = false;
  double with_sym = solve_bound(assemble_dense(prob, 2));
  double without = solve_bound(assemble_dense(prob, 2, no_sym));
  CHECK(with_sym == doctest::Approx(without).epsilon(1e-6));
  CHECK(with_sym == doctest::Approx(-0.9142).epsilon(2e-3));
}

TEST_CASE("cs with the single full clique matches dense block structure") {
  PMOProblem prob = problems::example_1();
  CliqueDecomposition dec;
  std::vector<int> allv(prob.n);
  std::iota(allv.begin(), allv.end(), 0);
  dec.cliques = {allv};
  dec.assignment.assign(prob.constraints.size(), 0);

  AssembledSdp a = assemble_dense(prob, 2);
  AssembledSdp b = assemble_cs(prob, 2, dec);
  REQUIRE(a.sdp.blocks.size() == b.sdp.blocks.size());
  CHECK(a.sdp.num_vars == b.sdp.num_vars);
  for (size_t i = 0; i < a.sdp.blocks.size(); ++i) {
    CHECK(a.sdp.blocks[i].dim == b.sdp.blocks[i].dim);
    REQUIRE(a.sdp.blocks[i].coeffs.size() == b.sdp.blocks[i].coeffs.size());
    for (size_t e = 0; e < a.sdp.blocks[i].coeffs.size(); ++e) {
      CHECK(a.sdp.blocks[i].coeffs[e].var == b.sdp.blocks[i].coeffs[e].var);
      CHECK(a.sdp.blocks[i].coeffs[e].row == b.sdp.blocks[i].coeffs[e].row);
      CHECK(a.sdp.blocks[i].coeffs[e].col == b.sdp.blocks[i].coeffs[e].col);
      CHECK(a.sdp.blocks[i].coeffs[e].val == b.sdp.blocks[i].coeffs[e].val);
    }
  }
}

TEST_CASE("equality constraints enter as linear rows (circle fixture)") {
  PMOProblem prob = problems::cs_merge_a();
  AssembledSdp a = assemble_dense(prob, 2);
  // the equality localizing rows all landed in sdp.equalities
  CHECK(a.sdp.blocks.size() == 2);  // moment + one inequality localizer
  CHECK(block_stats(a.sdp).num_equalities > 1);
  double bound = solve_bound(a);
  CHECK(bound == doctest::Approx(-1.250).epsilon(2e-3));
}

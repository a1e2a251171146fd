#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "pmo/solver.hpp"

using namespace pmo;

namespace {

// max t : C - t B >= 0  posed in vector form (min -t).
BlockSDP pencil_problem(const Eigen::MatrixXd& C, const Eigen::MatrixXd& B) {
  BlockSDP sdp;
  int t = sdp.new_var();
  sdp.objective[t] = -1.0;
  SdpBlock blk;
  blk.dim = (int)C.rows();
  for (int i = 0; i < blk.dim; ++i)
    for (int j = i; j < blk.dim; ++j) {
      if (B(i, j) != 0.0) blk.coeffs.push_back({t, i, j, -B(i, j)});
      if (C(i, j) != 0.0) blk.constants.push_back({i, j, -C(i, j)});
    }
  sdp.blocks.push_back(blk);
  return sdp;
}

}  // namespace

TEST_CASE("smallest eigenvalue of diag(3,5) via the pencil") {
  Eigen::MatrixXd C = Eigen::Vector2d(3, 5).asDiagonal();
  BlockSDP sdp = pencil_problem(C, Eigen::MatrixXd::Identity(2, 2));
  SdpSolution sol = solve_sdp(sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-7));
  CHECK(sol.primal_obj == doctest::Approx(-3.0).epsilon(1e-7));
  CHECK(std::abs(sol.primal_obj - sol.dual_obj) <= 1e-6);
}

TEST_CASE("random pencils agree with the eigenvalue oracle") {
  std::mt19937 gen(41);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int trial = 0; trial < 8; ++trial) {
    int n = 5;
    Eigen::MatrixXd R(n, n), S(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        R(i, j) = uni(gen);
        S(i, j) = uni(gen);
      }
    Eigen::MatrixXd C = 0.5 * (R + R.transpose());
    Eigen::MatrixXd B = S * S.transpose() + Eigen::MatrixXd::Identity(n, n);

    BlockSDP sdp = pencil_problem(C, B);
    SdpSolution sol = solve_sdp(sdp);
    REQUIRE(sol.status == SolveStatus::optimal);

    Eigen::LLT<Eigen::MatrixXd> llt(B);
    Eigen::MatrixXd L = llt.matrixL();
    Eigen::MatrixXd W = L.triangularView<Eigen::Lower>().solve(C);
    W = L.triangularView<Eigen::Lower>().solve(W.transpose()).eval();
    double oracle = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(W).eigenvalues().minCoeff();
    CHECK(sol.x[0] == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("equalities and multiple blocks") {
  // min x2 : x1 + x2 = 3, x1 - 1 >= 0, x2 >= 0
  BlockSDP sdp;
  int x1 = sdp.new_var(), x2 = sdp.new_var();
  sdp.objective[x2] = 1.0;
  SdpBlock b1;
  b1.dim = 1;
  b1.coeffs.push_back({x1, 0, 0, 1.0});
  b1.constants.push_back({0, 0, 1.0});
  SdpBlock b2;
  b2.dim = 1;
  b2.coeffs.push_back({x2, 0, 0, 1.0});
  sdp.blocks.push_back(b1);
  sdp.blocks.push_back(b2);
  sdp.equalities.push_back({{{x1, 1.0}, {x2, 1.0}}, 3.0});
  SdpSolution sol = solve_sdp(sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.x[0] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(sol.x[1] == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("redundant and inconsistent equalities") {
  BlockSDP sdp;
  int x1 = sdp.new_var();
  SdpBlock b;
  b.dim = 1;
  b.coeffs.push_back({x1, 0, 0, 1.0});
  sdp.blocks.push_back(b);
  sdp.equalities.push_back({{{x1, 1.0}}, 2.0});
  sdp.equalities.push_back({{{x1, 2.0}}, 4.0});  // dependent, consistent
  SdpSolution sol = solve_sdp(sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.x[0] == doctest::Approx(2.0).epsilon(1e-7));

  sdp.equalities.push_back({{{x1, 1.0}}, 3.0});  // inconsistent
  SdpSolution sol2 = solve_sdp(sdp);
  CHECK(sol2.status == SolveStatus::infeasible);
}

TEST_CASE("primal infeasible pencil is not reported optimal") {
  // x - 1 >= 0 and -x >= 0 cannot hold together
  BlockSDP sdp;
  int x = sdp.new_var();
  SdpBlock b1, b2;
  b1.dim = 1;
  b1.coeffs.push_back({x, 0, 0, 1.0});
  b1.constants.push_back({0, 0, 1.0});
  b2.dim = 1;
  b2.coeffs.push_back({x, 0, 0, -1.0});
  sdp.blocks.push_back(b1);
  sdp.blocks.push_back(b2);
  SdpSolution sol = solve_sdp(sdp);
  CHECK(sol.status != SolveStatus::optimal);
  CHECK(sol.status != SolveStatus::near_optimal);
}

TEST_CASE("block splitting solves disconnected patterns as one") {
  // one 4x4 block that is really two independent 2x2 pencils
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(4, 4);
  C.topLeftCorner(2, 2) << 2, 1, 1, 2;  // eigs 1, 3
  C.bottomRightCorner(2, 2) << 5, 0, 0, 7;
  BlockSDP sdp = pencil_problem(C, Eigen::MatrixXd::Identity(4, 4));
  SdpSolution sol = solve_sdp(sdp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("deterministic across repeated solves") {
  Eigen::MatrixXd C(3, 3);
  C << 4, 1, 0, 1, 3, 1, 0, 1, 5;
  BlockSDP sdp = pencil_problem(C, Eigen::MatrixXd::Identity(3, 3));
  SdpSolution a = solve_sdp(sdp);
  SdpSolution b = solve_sdp(sdp);
  REQUIRE(a.status == SolveStatus::optimal);
  CHECK(a.iterations == b.iterations);
  CHECK(a.x[0] == b.x[0]);  // bitwise identical
}

TEST_CASE("paper Q eigenvalues are 0 and 13.5 +- 3 sqrt 2") {
  Eigen::MatrixXd Q(6, 6);
  Q << 6.5, 3, -2, -3, -3, 2, 3, 12.5, 3, -4, -4, -3, -2, 3, 2, 0, 0, -2, -3, -4, 0, 2, 2, 0, -3,
      -4, 0, 2, 2, 0, 2, -3, -2, 0, 0, 2;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Q);
  Eigen::VectorXd ev = es.eigenvalues();
  double s2 = std::sqrt(2.0);
  for (int i = 0; i < 4; ++i) CHECK(std::abs(ev[i]) <= 1e-10);
  CHECK(std::abs(ev[4] - (13.5 - 3 * s2)) <= 1e-10);
  CHECK(std::abs(ev[5] - (13.5 + 3 * s2)) <= 1e-10);
}

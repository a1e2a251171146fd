#include "pmo/problems.hpp"

#include <cmath>
#include <random>

namespace pmo {
namespace problems {

namespace {

Exponent exp_of(int n, std::initializer_list<std::pair<int, int>> powers) {
  Exponent e(n);
  for (auto& [var, pw] : powers) e.e[var] = pw;
  return e;
}

Poly p_const(int n, double c) { return constant(n, c); }

Poly p_mono(int n, std::initializer_list<std::pair<int, int>> powers, double c = 1.0) {
  return monomial(n, exp_of(n, powers), c);
}

}  // namespace

PMOProblem example_1() {
  const int n = 5;
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 5);
  for (int i = 0; i < 5; ++i) F.set_entry(i, i, p_mono(n, {{i, 4}}));
  F.set_entry(0, 1, p_mono(n, {{0, 2}}) + p_mono(n, {{1, 1}, {2, 1}}, -1));
  F.set_entry(0, 2, p_mono(n, {{2, 2}}) + p_mono(n, {{3, 1}, {4, 1}}, -1));
  F.set_entry(0, 3, p_mono(n, {{0, 1}, {3, 1}}));
  F.set_entry(0, 4, p_mono(n, {{0, 1}, {4, 1}}));
  F.set_entry(1, 2, p_mono(n, {{1, 2}}) + p_mono(n, {{2, 1}, {3, 1}}, -1));
  F.set_entry(1, 3, p_mono(n, {{1, 1}, {3, 1}}));
  F.set_entry(1, 4, p_mono(n, {{1, 1}, {4, 1}}));
  F.set_entry(2, 3, p_mono(n, {{3, 2}}) + p_mono(n, {{0, 1}, {1, 1}}, -1));
  F.set_entry(2, 4, p_mono(n, {{4, 2}}) + p_mono(n, {{2, 1}, {4, 1}}, -1));
  F.set_entry(3, 4, p_mono(n, {{3, 2}}) + p_mono(n, {{0, 1}, {2, 1}}, -1));
  prob.objective = F;

  SymPolyMatrix G1(n, 2), G2(n, 2);
  G1.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 2}}, -1) + p_mono(n, {{1, 2}}, -1));
  G1.set_entry(0, 1, p_mono(n, {{1, 1}, {2, 1}}));
  G1.set_entry(1, 1, p_const(n, 1) + p_mono(n, {{2, 2}}, -1));
  G2.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{3, 2}}, -1));
  G2.set_entry(0, 1, p_mono(n, {{3, 1}, {4, 1}}));
  G2.set_entry(1, 1, p_const(n, 1) + p_mono(n, {{4, 2}}, -1));
  prob.constraints.push_back({G1, ConstraintKind::inequality});
  prob.constraints.push_back({G2, ConstraintKind::inequality});
  return prob;
}

PMOProblem example_6() {
  PMOProblem prob = example_1();
  const int n = 5;
  SymPolyMatrix F(n, 5);
  for (int i = 0; i < 5; ++i) F.set_entry(i, i, p_mono(n, {{i, 4}}));
  F.set_entry(0, 1, p_mono(n, {{0, 2}}) + p_mono(n, {{1, 1}, {2, 1}}, -1));
  F.set_entry(0, 2, p_mono(n, {{2, 2}}) + p_mono(n, {{3, 1}, {4, 1}}, -1));
  F.set_entry(0, 3, p_const(n, 0.5));
  F.set_entry(0, 4, p_const(n, 0.5));
  F.set_entry(1, 2, p_mono(n, {{1, 2}}) + p_mono(n, {{2, 1}, {3, 1}}, -1));
  F.set_entry(1, 3, p_const(n, 0.5));
  F.set_entry(1, 4, p_const(n, 0.5));
  F.set_entry(2, 3, p_mono(n, {{3, 2}}) + p_mono(n, {{0, 1}, {1, 1}}, -1));
  F.set_entry(2, 4, p_mono(n, {{4, 2}}) + p_mono(n, {{2, 1}, {3, 1}}, -1));
  F.set_entry(3, 4, p_mono(n, {{3, 2}}) + p_mono(n, {{0, 1}, {2, 1}}, -1));
  prob.objective = F;
  return prob;
}

PMOProblem example_7() {
  PMOProblem prob = example_6();
  const int n = 5;
  SymPolyMatrix F(n, 5);
  for (int i = 0; i < 5; ++i) F.set_entry(i, i, p_mono(n, {{i, 4}}));
  F.set_entry(0, 1, p_mono(n, {{0, 2}}) + p_mono(n, {{1, 1}, {2, 1}}, -1));
  F.set_entry(0, 2, p_mono(n, {{2, 2}}) + p_mono(n, {{3, 1}, {4, 1}}, -1));
  F.set_entry(1, 2, p_mono(n, {{1, 2}}) + p_mono(n, {{2, 1}, {3, 1}}, -1));
  F.set_entry(2, 3, p_mono(n, {{3, 2}}) + p_mono(n, {{0, 1}, {1, 1}}, -1));
  F.set_entry(2, 4, p_mono(n, {{4, 2}}) + p_mono(n, {{2, 1}, {3, 1}}, -1));
  F.set_entry(3, 4, p_mono(n, {{3, 2}}) + p_mono(n, {{0, 1}, {2, 1}}, -1));
  prob.objective = F;
  return prob;
}

PMOProblem example_2(int n) {
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 3);
  Poly f11(n), f12(n), f13(n), f22(n), f23(n), f33(n);
  for (int k = 0; k < n - 2; ++k) f11 += p_mono(n, {{k, 2}});
  for (int k = 0; k < n - 1; ++k) f12 += p_mono(n, {{k, 1}, {k + 1, 1}});
  f13 = p_const(n, 1);
  for (int k = 1; k < n - 1; ++k) f22 += p_mono(n, {{k, 2}});
  for (int k = 0; k < n - 2; ++k) f23 += p_mono(n, {{k, 1}, {k + 2, 1}});
  for (int k = 2; k < n; ++k) f33 += p_mono(n, {{k, 2}});
  F.set_entry(0, 0, f11);
  F.set_entry(0, 1, f12);
  F.set_entry(0, 2, f13);
  F.set_entry(1, 1, f22);
  F.set_entry(1, 2, f23);
  F.set_entry(2, 2, f33);
  prob.objective = F;
  for (int k = 0; k < n - 2; ++k) {
    SymPolyMatrix G(n, 2);
    G.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{k, 2}}, -1) + p_mono(n, {{k + 1, 2}}, -1));
    G.set_entry(0, 1, p_mono(n, {{k + 1, 1}}) + p_const(n, 0.5));
    G.set_entry(1, 1, p_const(n, 1) + p_mono(n, {{k + 2, 2}}, -1));
    prob.constraints.push_back({G, ConstraintKind::inequality});
  }
  return prob;
}

PMOProblem example_3(int p, unsigned seed) {
  const int n = 3;
  std::mt19937 gen(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Eigen::MatrixXd A(p, p), B(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      A(i, j) = A(j, i) = uni(gen);
      B(i, j) = B(j, i) = uni(gen);
    }
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      Poly f(n);
      if (i == j) f += p_const(n, 1) + p_mono(n, {{0, 2}}, -1) + p_mono(n, {{1, 2}}, -1);
      Poly mid = p_mono(n, {{0, 2}}) + p_mono(n, {{2, 2}}, -1);
      Poly last = p_mono(n, {{0, 2}, {2, 2}}) + p_mono(n, {{1, 2}}, -2);
      f += mid.scaled(A(i, j)) + last.scaled(B(i, j));
      F.set_entry(i, j, f);
    }
  prob.objective = F;
  SymPolyMatrix G(n, 2);
  G.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 2}}, -1) + p_mono(n, {{1, 2}}, -1));
  G.set_entry(0, 1, p_mono(n, {{1, 1}, {2, 1}}));
  G.set_entry(1, 1, p_const(n, 1) + p_mono(n, {{2, 2}}, -1));
  prob.constraints.push_back({G, ConstraintKind::inequality});
  return prob;
}

PMOProblem example_4() {
  const int n = 5;
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 2);
  F.set_entry(0, 0, p_mono(n, {{0, 4}}) + p_mono(n, {{1, 4}}) + p_const(n, 1));
  F.set_entry(0, 1, p_mono(n, {{0, 1}, {2, 1}}));
  F.set_entry(1, 1, p_mono(n, {{2, 4}}) + p_mono(n, {{3, 4}}) + p_mono(n, {{4, 4}}) +
                        p_const(n, 0.5));
  prob.objective = F;
  SymPolyMatrix G(n, 5);
  for (int i = 0; i < 5; ++i)
    G.set_entry(i, i, p_const(n, 1) + p_mono(n, {{i, 2}}, -1));
  G.set_entry(0, 1, p_mono(n, {{0, 1}, {1, 1}}));
  G.set_entry(0, 2, p_mono(n, {{0, 1}, {2, 1}}));
  G.set_entry(1, 2, p_mono(n, {{1, 1}, {2, 1}}));
  G.set_entry(2, 3, p_mono(n, {{2, 1}, {3, 1}}));
  G.set_entry(2, 4, p_mono(n, {{2, 1}, {4, 1}}));
  G.set_entry(3, 4, p_mono(n, {{3, 1}, {4, 1}}));
  prob.constraints.push_back({G, ConstraintKind::inequality});
  return prob;
}

PMOProblem example_9(int n) {
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 2);
  F.set_entry(0, 0, p_const(n, 1));
  F.set_entry(0, 1, p_mono(n, {{0, 1}, {1, 1}}));
  F.set_entry(1, 1, p_const(n, 1) + p_mono(n, {{n - 1, 2}}));
  prob.objective = F;
  SymPolyMatrix G(n, n);
  for (int i = 0; i < n; ++i) G.set_entry(i, i, p_const(n, 1) + p_mono(n, {{i, 4}}, -1));
  for (int i = 0; i + 1 < n; ++i)
    G.set_entry(i, n - 1, p_mono(n, {{i, 1}, {i + 1, 1}}));
  prob.constraints.push_back({G, ConstraintKind::inequality});
  return prob;
}

PMOProblem block_two_moment() {
  const int n = 2;
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 2);
  F.set_entry(0, 0, p_mono(n, {{0, 2}}));
  F.set_entry(0, 1, p_mono(n, {{0, 1}}) + p_mono(n, {{1, 1}}));
  F.set_entry(1, 1, p_mono(n, {{1, 2}}));
  prob.objective = F;
  SymPolyMatrix G(n, 1);
  G.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 2}}, -1) + p_mono(n, {{1, 2}}, -1));
  prob.constraints.push_back({G, ConstraintKind::inequality});
  return prob;
}

PMOProblem bivariate_pair() {
  const int n = 2;
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 2);
  F.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 2}}) + p_mono(n, {{0, 2}, {1, 2}}, 2) +
                        p_mono(n, {{1, 2}}));
  F.set_entry(0, 1, p_mono(n, {{0, 1}, {1, 1}}));
  F.set_entry(1, 1, p_const(n, 2) + p_mono(n, {{0, 2}, {1, 2}}) + p_mono(n, {{1, 4}}));
  prob.objective = F;
  return prob;
}

PMOProblem cs_merge_a() {
  const int n = 3;
  PMOProblem prob;
  prob.n = n;
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  Eigen::Vector3d q1(1 / s2, 0, 1 / s2), q2(-1 / s3, 1 / s3, 1 / s3), q3(1 / s6, 2 / s6, -1 / s6);
  Eigen::Matrix3d P12 = q1 * q1.transpose() + q2 * q2.transpose();
  Eigen::Matrix3d P3 = q3 * q3.transpose();

  SymPolyMatrix F(n, 3);
  Poly a(n), b(n);
  a += p_mono(n, {{0, 2}}, -1);
  a += p_mono(n, {{1, 1}});
  b += p_mono(n, {{1, 2}});
  b += p_mono(n, {{2, 2}});
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      F.set_entry(i, j, a.scaled(P12(i, j)) + b.scaled(P3(i, j)));
  prob.objective = F;

  SymPolyMatrix G1(n, 1), G2(n, 1);
  G1.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 2}}, -1) + p_mono(n, {{1, 2}}, -1));
  G2.set_entry(0, 0, p_mono(n, {{1, 2}}) + p_mono(n, {{2, 2}}) + p_const(n, -1));
  prob.constraints.push_back({G1, ConstraintKind::inequality});
  prob.constraints.push_back({G2, ConstraintKind::equality});
  return prob;
}

PMOProblem cs_merge_b() {
  const int n = 3;
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 2);
  F.set_entry(0, 0, p_mono(n, {{0, 2}}) + p_mono(n, {{1, 2}}));
  F.set_entry(0, 1, p_const(n, 2) + p_mono(n, {{0, 1}, {1, 1}}) + p_mono(n, {{2, 2}}));
  F.set_entry(1, 1, p_mono(n, {{1, 1}, {2, 1}}));
  prob.objective = F;
  SymPolyMatrix G1(n, 1), G2(n, 1);
  G1.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 2}}, -1) + p_mono(n, {{1, 2}}, -1));
  G2.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{1, 2}}, -1) + p_mono(n, {{2, 2}}, -1));
  prob.constraints.push_back({G1, ConstraintKind::inequality});
  prob.constraints.push_back({G2, ConstraintKind::inequality});
  return prob;
}

PMOProblem cs_counterexample() {
  const int n = 2;
  PMOProblem prob;
  prob.n = n;
  SymPolyMatrix F(n, 2);
  // 2(x1-1)^2+(x2-1)^2+(x2-2)^2 and 2(x1-2)^2+(x2-1)^2+(x2-2)^2
  F.set_entry(0, 0, p_mono(n, {{0, 2}}, 2) + p_mono(n, {{0, 1}}, -4) + p_mono(n, {{1, 2}}, 2) +
                        p_mono(n, {{1, 1}}, -6) + p_const(n, 7));
  F.set_entry(0, 1, p_const(n, 3) + p_mono(n, {{1, 1}}, -2));
  F.set_entry(1, 1, p_mono(n, {{0, 2}}, 2) + p_mono(n, {{0, 1}}, -8) + p_mono(n, {{1, 2}}, 2) +
                        p_mono(n, {{1, 1}}, -6) + p_const(n, 13));
  prob.objective = F;
  for (int i = 0; i < 2; ++i) {
    SymPolyMatrix G(n, 1);
    G.set_entry(0, 0, p_const(n, 4) + p_mono(n, {{i, 2}}, -1));
    prob.constraints.push_back({G, ConstraintKind::inequality});
  }
  return prob;
}

SymPolyMatrix newton_threevar() {
  const int n = 3;
  SymPolyMatrix F(n, 3);
  F.set_entry(0, 0, p_const(n, 1) + p_mono(n, {{0, 4}}) + p_mono(n, {{0, 2}}, -0.5) +
                        p_mono(n, {{0, 1}}, 0.25) + p_mono(n, {{1, 2}}) + p_mono(n, {{2, 4}}));
  F.set_entry(0, 1, p_mono(n, {{1, 1}}, -1));
  F.set_entry(0, 2, p_mono(n, {{0, 1}}) + p_mono(n, {{2, 1}}));
  F.set_entry(1, 1, p_const(n, 2) + p_mono(n, {{1, 4}}, 2) + p_mono(n, {{0, 2}}, 2) +
                        p_mono(n, {{0, 1}}, -1));
  F.set_entry(1, 2, p_mono(n, {{0, 1}}));
  F.set_entry(2, 2, p_const(n, 2) + p_mono(n, {{2, 2}}, 3) + p_mono(n, {{0, 2}, {1, 2}}));
  return F;
}

ParametricPmi tridiag_band(int omega) {
  const int n = 3;
  int dim = 3 * omega;
  ParametricPmi ppm;
  ppm.n = n;
  ppm.base = SymPolyMatrix(n, dim);
  ppm.params.assign(2, SymPolyMatrix(n, dim));
  ppm.cost = {-10.0, 1.0};  // minimize  lam2 - 10 lam1

  for (int i = 0; i < dim; ++i) {
    int a = i % 3;            // lam2 * x_a^4
    int b = (a + 1) % 3;      // + x_b^4
    ppm.params[1].add_term(exp_of(n, {{a, 4}}), i, i, 1.0);
    ppm.base.add_term(exp_of(n, {{b, 4}}), i, i, 1.0);
  }
  for (int i = 0; i + 1 < dim; ++i) {
    // off-diagonal (i, i+1): lam1 for odd 1-based positions, lam2 for even;
    // monomial cycles x1^2x2^2, x2^2x3^2, x1^2x3^2
    int pos = i + 1;  // 1-based
    int which = (pos % 2 == 1) ? 0 : 1;
    Exponent mono(n);
    if (pos % 3 == 1)
      mono = exp_of(n, {{0, 2}, {1, 2}});
    else if (pos % 3 == 2)
      mono = exp_of(n, {{1, 2}, {2, 2}});
    else
      mono = exp_of(n, {{0, 2}, {2, 2}});
    ppm.params[which].add_term(mono, i, i + 1, 1.0);
  }
  return ppm;
}

}  // namespace problems
}  // namespace pmo

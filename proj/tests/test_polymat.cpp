#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "pmo/polymatrix.hpp"
#include "pmo/problems.hpp"

using namespace pmo;

namespace {

// minimal rational matrix for the exact-mode Gram identity
struct RatMat {
  int n = 0;
  std::vector<Rational> a;
  explicit RatMat(int n_) : n(n_), a(n_ * n_) {}
  Rational& operator()(int i, int j) { return a[i * n + j]; }
  const Rational& operator()(int i, int j) const { return a[i * n + j]; }
  int rows() const { return n; }
  int cols() const { return n; }
};

Exponent E(std::initializer_list<int> v) { return Exponent(std::vector<int>(v)); }

}  // namespace

TEST_CASE("support of the two-block fixture matches the paper's entries") {
  SymPolyMatrix F = problems::block_two_moment().objective;
  auto s = F.support();
  std::set<Exponent> expect = {E({2, 0}), E({1, 0}), E({0, 1}), E({0, 2})};
  CHECK(std::set<Exponent>(s.begin(), s.end()) == expect);
}

TEST_CASE("support edge cases") {
  SymPolyMatrix zero(2, 2);
  CHECK(zero.support().empty());

  SymPolyMatrix eye(3, 2);
  eye.add_term(Exponent(3), 0, 0, 1.0);
  eye.add_term(Exponent(3), 1, 1, 1.0);
  CHECK(eye.support() == std::set<Exponent>{Exponent(3)});

  // cancelling additions prune the key
  SymPolyMatrix c(2, 2);
  c.add_term(E({1, 0}), 0, 1, 2.0);
  c.add_term(E({1, 0}), 0, 1, -2.0);
  CHECK(c.support().empty());
}

TEST_CASE("support of a sum is contained in the union") {
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    SymPolyMatrix A(2, 2), B(2, 2);
    for (int t = 0; t < 4; ++t) {
      Exponent e({(int)(gen() % 3), (int)(gen() % 3)});
      A.add_term(e, gen() % 2, 1, uni(gen));
      Exponent f({(int)(gen() % 3), (int)(gen() % 3)});
      B.add_term(f, gen() % 2, 1, uni(gen));
    }
    auto sum = A + B;
    auto sa = A.support(), sb = B.support();
    for (auto& k : sum.support()) CHECK((sa.count(k) || sb.count(k)));
  }
}

TEST_CASE("min relaxation order") {
  CHECK(min_relaxation_order(problems::example_1()) == 2);

  PMOProblem constant;
  constant.n = 2;
  constant.objective = SymPolyMatrix(2, 2);
  constant.objective.add_term(Exponent(2), 0, 0, 3.0);
  constant.objective.add_term(Exponent(2), 1, 1, 5.0);
  CHECK(min_relaxation_order(constant) == 0);

  PMOProblem cubic;
  cubic.n = 1;
  cubic.objective = SymPolyMatrix(1, 1);
  cubic.objective.add_term(E({3}), 0, 0, 1.0);
  CHECK(min_relaxation_order(cubic) == 2);
}

TEST_CASE("scalarize basics") {
  SymPolyMatrix eye(1, 2);
  eye.add_term(Exponent(1), 0, 0, 1.0);
  eye.add_term(Exponent(1), 1, 1, 1.0);
  Poly s = scalarize(eye);  // y1^2 + y2^2 in (x1, y1, y2)
  CHECK(s.coeff(E({0, 2, 0})) == doctest::Approx(1.0));
  CHECK(s.coeff(E({0, 0, 2})) == doctest::Approx(1.0));
  CHECK(s.terms().size() == 2);

  SymPolyMatrix off(1, 2);
  off.add_term(Exponent(1), 0, 1, 1.0);
  Poly so = scalarize(off);
  CHECK(so.coeff(E({0, 1, 1})) == doctest::Approx(2.0));
  CHECK(so.terms().size() == 1);
}

TEST_CASE("scalarize has y-degree exactly two and matches evaluation") {
  SymPolyMatrix F = problems::bivariate_pair().objective;
  Poly s = scalarize(F);
  int n = 2, p = 2;
  for (auto& [e, c] : s.terms()) {
    int ydeg = 0;
    for (int i = n; i < n + p; ++i) ydeg += e.e[i];
    CHECK(ydeg == 2);
  }
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> uni(-2, 2);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> x = {uni(gen), uni(gen)};
    Eigen::Vector2d y(uni(gen), uni(gen));
    Eigen::MatrixXd Fx = F.eval(x);
    double direct = y.dot(Fx * y);
    double via = s.eval({x[0], x[1], y[0], y[1]});
    CHECK(std::abs(direct - via) <= 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("gram_reconstruct trivial and random-PSD cases") {
  // Q = 1x1 identity with basis {1}
  Eigen::MatrixXd Q1 = Eigen::MatrixXd::Identity(1, 1);
  auto M1 = gram_reconstruct<double>(Q1, {{Exponent(1)}}, 1);
  CHECK(M1.coeff(Exponent(1), 0, 0) == doctest::Approx(1.0));

  // random PSD Q against a brute-force symbolic expansion
  std::mt19937 gen(3);
  std::uniform_real_distribution<double> uni(-1, 1);
  std::vector<std::vector<Exponent>> bases = {{E({0}), E({1})}, {E({0}), E({1})}};
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::MatrixXd R(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) R(i, j) = uni(gen);
    Eigen::MatrixXd Q = R.transpose() * R;
    auto M = gram_reconstruct<double>(Q, bases, 1);

    // oracle: expand y' diag(v)' Q diag(v) y entry by entry
    for (int u = 0; u < 2; ++u)
      for (int v = u; v < 2; ++v)
        for (int da = 0; da <= 2; ++da) {
          double want = 0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
              if (a + b == da) want += Q(u * 2 + a, v * 2 + b);
          CHECK(M.coeff(E({da}), u, v) == doctest::Approx(want).epsilon(1e-12));
        }
  }
}

TEST_CASE("gram_reconstruct with a PSD Gram is pointwise PSD") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> uni(-1, 1);
  std::vector<std::vector<Exponent>> bases = {{E({0, 0}), E({1, 0}), E({0, 1})},
                                              {E({0, 0}), E({1, 0}), E({0, 1})}};
  Eigen::MatrixXd R(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) R(i, j) = uni(gen);
  Eigen::MatrixXd Q = R.transpose() * R;
  auto M = gram_reconstruct<double>(Q, bases, 2);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> x = {uni(gen) * 2, uni(gen) * 2};
    Eigen::Vector2d y(uni(gen), uni(gen));
    Eigen::MatrixXd Mx = M.eval(x);
    CHECK(y.dot(Mx * y) >= -1e-9);
  }
}

TEST_CASE("gram_reconstruct dimension mismatch is rejected") {
  Eigen::MatrixXd Q = Eigen::MatrixXd::Identity(3, 3);
  std::vector<std::vector<Exponent>> bases = {{Exponent(1)}, {Exponent(1)}};
  CHECK_THROWS(gram_reconstruct<double>(Q, bases, 1));
}

TEST_CASE("exact rational Gram identity of the separable counterexample") {
  // Q over m_1 (x) I_2 interleaved ordering, fractions as printed
  RatMat Qi(6);
  auto set = [&](int i, int j, Rational v) { Qi(i, j) = Qi(j, i) = v; };
  set(0, 0, {13, 2});
  set(0, 1, 3);
  set(0, 2, -2);
  set(0, 3, -3);
  set(0, 4, -3);
  set(0, 5, 2);
  set(1, 1, {25, 2});
  set(1, 2, 3);
  set(1, 3, -4);
  set(1, 4, -4);
  set(1, 5, -3);
  set(2, 2, 2);
  set(2, 3, 0);
  set(2, 4, 0);
  set(2, 5, -2);
  set(3, 3, 2);
  set(3, 4, 2);
  set(3, 5, 0);
  set(4, 4, 2);
  set(4, 5, 0);
  set(5, 5, 2);

  // permute interleaved (mono*2 + col) -> column blocks (col*3 + mono)
  RatMat Q(6);
  auto cb = [](int col, int mono) { return col * 3 + mono; };
  auto il = [](int col, int mono) { return mono * 2 + col; };
  for (int c1 = 0; c1 < 2; ++c1)
    for (int m1 = 0; m1 < 3; ++m1)
      for (int c2 = 0; c2 < 2; ++c2)
        for (int m2 = 0; m2 < 3; ++m2) Q(cb(c1, m1), cb(c2, m2)) = Qi(il(c1, m1), il(c2, m2));

  std::vector<std::vector<Exponent>> bases = {{E({0, 0}), E({1, 0}), E({0, 1})},
                                              {E({0, 0}), E({1, 0}), E({0, 1})}};
  SymPolyMatrixQ M = gram_reconstruct<Rational>(Q, bases, 2);

  // F - I/2 with exact coefficients
  SymPolyMatrixQ T(2, 2);
  T.add_term(E({2, 0}), 0, 0, 2);
  T.add_term(E({1, 0}), 0, 0, -4);
  T.add_term(E({0, 2}), 0, 0, 2);
  T.add_term(E({0, 1}), 0, 0, -6);
  T.add_term(E({0, 0}), 0, 0, {13, 2});
  T.add_term(E({0, 0}), 0, 1, 3);
  T.add_term(E({0, 1}), 0, 1, -2);
  T.add_term(E({2, 0}), 1, 1, 2);
  T.add_term(E({1, 0}), 1, 1, -8);
  T.add_term(E({0, 2}), 1, 1, 2);
  T.add_term(E({0, 1}), 1, 1, -6);
  T.add_term(E({0, 0}), 1, 1, {25, 2});

  CHECK(M.support() == T.support());
  for (auto& alpha : T.support())
    for (int u = 0; u < 2; ++u)
      for (int v = u; v < 2; ++v) CHECK(M.coeff(alpha, u, v) == T.coeff(alpha, u, v));
}

#include <random>

#include "doctest.h"
#include "pmo/basis.hpp"
#include "pmo/problems.hpp"

using namespace pmo;

namespace {
Exponent E(std::initializer_list<int> v) { return Exponent(std::vector<int>(v)); }
}  // namespace

TEST_CASE("full basis sizes") {
  CHECK(full_basis(5, 2).size() == 21);
  CHECK(full_basis(3, 2).size() == 10);
  CHECK(full_basis(1, 0).size() == 1);
  // canonical head: 1, x1, x2, ...
  auto b = full_basis(2, 2);
  CHECK(b[0] == E({0, 0}));
  CHECK(b[1] == E({1, 0}));
  CHECK(b[2] == E({0, 1}));
  CHECK(b[3] == E({2, 0}));
}

TEST_CASE("hull membership on the Motzkin support") {
  std::set<Exponent> verts = {E({0, 0}), E({2, 4}), E({4, 2})};
  CHECK(hull_membership(E({2, 2}), verts));
  CHECK_FALSE(hull_membership(E({4, 4}), verts));
  CHECK(hull_membership(E({2, 4}), verts));  // vertex itself
}

TEST_CASE("hull membership is monotone under adding vertices") {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::set<Exponent> verts;
    for (int k = 0; k < 4; ++k) verts.insert(E({(int)(gen() % 5), (int)(gen() % 5)}));
    Exponent q = E({(int)(gen() % 5), (int)(gen() % 5)});
    bool before = hull_membership(q, verts);
    verts.insert(E({(int)(gen() % 5), (int)(gen() % 5)}));
    bool after = hull_membership(q, verts);
    if (before) CHECK(after);
  }
}

TEST_CASE("newton bases of the three-variable fixture") {
  auto bases = newton_bases(problems::newton_threevar());
  std::vector<Exponent> v1 = {E({0, 0, 0}), E({2, 0, 0}), E({1, 0, 0}), E({1, 0, 1}),
                              E({0, 1, 0}), E({0, 0, 2}), E({0, 0, 1})};
  std::vector<Exponent> v2 = {E({0, 0, 0}), E({1, 0, 0}), E({0, 1, 0}), E({0, 2, 0})};
  std::vector<Exponent> v3 = {E({0, 0, 0}), E({1, 1, 0}), E({0, 0, 1})};
  std::sort(v1.begin(), v1.end());
  std::sort(v2.begin(), v2.end());
  std::sort(v3.begin(), v3.end());
  CHECK(bases[0] == v1);
  CHECK(bases[1] == v2);
  CHECK(bases[2] == v3);
  CHECK(bases[0].size() + bases[1].size() + bases[2].size() == 14);
}

TEST_CASE("newton bases trivial cases") {
  SymPolyMatrix eye(2, 3);
  for (int j = 0; j < 3; ++j) eye.add_term(Exponent(2), j, j, 1.0);
  auto b = newton_bases(eye);
  for (int j = 0; j < 3; ++j) {
    REQUIRE(b[j].size() == 1);
    CHECK(b[j][0] == Exponent(2));
  }

  SymPolyMatrix diag(2, 2);
  diag.add_term(E({4, 0}), 0, 0, 1.0);
  diag.add_term(E({0, 4}), 1, 1, 1.0);
  auto bd = newton_bases(diag);
  REQUIRE(bd[0].size() == 1);
  CHECK(bd[0][0] == E({2, 0}));
  REQUIRE(bd[1].size() == 1);
  CHECK(bd[1][0] == E({0, 2}));
}

TEST_CASE("zero diagonal with nonzero row is rejected") {
  SymPolyMatrix F(2, 2);
  F.add_term(E({2, 0}), 0, 0, 1.0);
  F.add_term(E({1, 0}), 0, 1, 1.0);  // row 2 nonzero, F_22 = 0
  CHECK_THROWS_AS(newton_bases(F), NotSosError);

  SymPolyMatrix Z(2, 2);
  Z.add_term(E({2, 0}), 0, 0, 1.0);  // row 2 entirely zero: fine, empty basis
  auto b = newton_bases(Z);
  CHECK(b[1].empty());
}

TEST_CASE("newton bases are contained in the full basis") {
  auto bases = newton_bases(problems::newton_threevar());
  auto full = full_basis(3, 2);
  std::set<Exponent> fullset(full.begin(), full.end());
  for (auto& b : bases)
    for (auto& a : b) CHECK(fullset.count(a) == 1);
}

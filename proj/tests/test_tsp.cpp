#include <random>
#include <set>

#include "doctest.h"
#include "pmo/problems.hpp"
#include "pmo/relax.hpp"
#include "pmo/sosverify.hpp"
#include "pmo/symmetry.hpp"

using namespace pmo;

namespace {
Exponent E(std::initializer_list<int> v) { return Exponent(std::vector<int>(v)); }

std::set<std::pair<std::string, int>> clique_labels(const TsState& ts, int k,
                                                    const std::vector<int>& clique) {
  std::set<std::pair<std::string, int>> out;
  for (int node : clique) {
    auto info = ts.node_info(k, node);
    out.insert({info.monomial.str(), info.copy_index + 1});
  }
  return out;
}
}  // namespace

TEST_CASE("bivariate TSP has five connected components") {
  SymPolyMatrix F = problems::bivariate_pair().objective;
  std::vector<MonomialBasis> bases(2, full_basis(2, 2));
  SparsityGraph g = tsp_unconstrained(F, bases);
  CHECK(g.connected_components().size() == 5);
}

TEST_CASE("TSP of a diagonal matrix with disjoint supports has no cross-column edges") {
  SymPolyMatrix F(2, 2);
  F.add_term(E({2, 0}), 0, 0, 1.0);
  F.add_term(E({0, 2}), 1, 1, 1.0);
  std::vector<MonomialBasis> bases(2, full_basis(2, 1));
  SparsityGraph g = tsp_unconstrained(F, bases);
  int cols = 3;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK_FALSE(g.has_edge(a, cols + b));
}

TEST_CASE("two-block fixture stabilizes at s=2 with the known moment blocks") {
  PMOProblem prob = problems::block_two_moment();
  TsState ts = ts_iterate(prob, 2, ClosureKind::block, 50);
  CHECK(ts.stabilized);
  CHECK(ts.s_reached == 2);
  auto cliques = ts.cliques(0, ClosureKind::block);
  REQUIRE(cliques.size() == 2);
  std::set<std::pair<std::string, int>> b1 = {{"1", 1},      {"x1", 2},    {"x2", 2},
                                              {"x1^2", 1},   {"x1*x2", 1}, {"x2^2", 1}};
  std::set<std::pair<std::string, int>> b2 = {{"1", 2},      {"x1", 1},    {"x2", 1},
                                              {"x1^2", 2},   {"x1*x2", 2}, {"x2^2", 2}};
  auto c0 = clique_labels(ts, 0, cliques[0]);
  auto c1 = clique_labels(ts, 0, cliques[1]);
  CHECK(((c0 == b1 && c1 == b2) || (c0 == b2 && c1 == b1)));
}

TEST_CASE("edge sets ascend with s and stabilize") {
  PMOProblem prob = problems::example_1();
  int prev = -1;
  for (int s = 1; s <= 4; ++s) {
    TsState ts = ts_iterate(prob, 2, ClosureKind::block, s);
    int edges = 0;
    for (auto& g : ts.graphs) edges += g.num_edges();
    CHECK(edges >= prev);
    prev = edges;
  }
  TsState full = ts_iterate(prob, 2, ClosureKind::block, 100);
  CHECK(full.stabilized);
}

TEST_CASE("example_1 term sparsity matches the table at r=2") {
  PMOProblem prob = problems::example_1();

  TsState b1 = ts_iterate(prob, 2, ClosureKind::block, 1);
  AssembledSdp a1 = assemble_ts(prob, 2, b1, ClosureKind::block);
  CHECK(block_stats(a1.sdp).mb == 50);
  SdpSolution s1 = solve_sdp(a1.sdp);
  CHECK(s1.primal_obj == doctest::Approx(-2.2766).epsilon(2e-3));

  TsState b2 = ts_iterate(prob, 2, ClosureKind::block, 2);
  AssembledSdp a2 = assemble_ts(prob, 2, b2, ClosureKind::block);
  CHECK(block_stats(a2.sdp).mb == 80);
  SdpSolution s2 = solve_sdp(a2.sdp);
  CHECK(s2.primal_obj == doctest::Approx(-2.2766).epsilon(2e-3));

  // monotone chain: lambda(s=1) <= lambda(s=2) <= dense
  AssembledSdp ad = assemble_dense(prob, 2);
  SdpSolution sd = solve_sdp(ad.sdp);
  CHECK(s1.primal_obj <= s2.primal_obj + 1e-6);
  CHECK(s2.primal_obj <= sd.primal_obj + 1e-6);
}

TEST_CASE("dense-support diagonal objective reaches the complete graph in one step") {
  SymPolyMatrix F(2, 2);
  for (int j = 0; j < 2; ++j)
    for (auto& a : full_basis(2, 2)) F.add_term(a, j, j, 1.0 + a.degree());
  PMOProblem prob;
  prob.n = 2;
  prob.objective = F;
  TsState ts = ts_iterate(prob, 1, ClosureKind::block, 1);
  auto comps = ts.cliques(0, ClosureKind::block);
  // every node of a column lands in one component; columns stay separate
  // only if no cross support exists (diagonal F with full diagonal support)
  for (auto& c : comps) CHECK((c.size() == 3 || c.size() == 6));
}

TEST_CASE("sign symmetries") {
  // the two-block fixture has odd supports: only the trivial symmetry
  CHECK(sign_symmetries(problems::block_two_moment()).empty());

  // even objective, no constraints: full rank basis
  PMOProblem even;
  even.n = 2;
  even.objective = SymPolyMatrix(2, 1);
  even.objective.add_term(E({2, 0}), 0, 0, 1.0);
  even.objective.add_term(E({0, 2}), 0, 0, 1.0);
  CHECK(sign_symmetries(even).size() == 2);

  // G supports {(2,0),(0,2),(0,0)}, F support {(2,0)}: full parity basis
  PMOProblem p;
  p.n = 2;
  p.objective = SymPolyMatrix(2, 1);
  p.objective.add_term(E({2, 0}), 0, 0, 1.0);
  SymPolyMatrix G(2, 1);
  G.add_term(E({2, 0}), 0, 0, -1.0);
  G.add_term(E({0, 2}), 0, 0, -1.0);
  G.add_term(E({0, 0}), 0, 0, 1.0);
  p.constraints.push_back({G, ConstraintKind::inequality});
  auto R = sign_symmetries(p);
  CHECK(R.size() == 2);
}

TEST_CASE("sign symmetry blocks partition by parity") {
  MonomialBasis basis = full_basis(2, 1);  // 1, x1, x2
  std::vector<std::vector<int>> unit = {{1, 0}, {0, 1}};
  auto classes = sign_symmetry_blocks(unit, basis, 1);
  CHECK(classes.size() == 3);

  // trivial basis: single class
  auto one = sign_symmetry_blocks({}, basis, 2);
  REQUIRE(one.size() == 1);
  CHECK(one[0].size() == 6);

  // even-symmetry on the degree-2 basis: classes keyed by parity vector
  auto par = sign_symmetry_blocks(unit, full_basis(2, 2), 1);
  CHECK(par.size() == 4);  // {1,x1^2,x2^2}, {x1}, {x2}, {x1x2}
}

TEST_CASE("stabilized TS blocks refine the sign-symmetry partition") {
  std::mt19937 gen(77);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2, p = 1 + (int)(gen() % 2);
    PMOProblem prob;
    prob.n = n;
    prob.objective = SymPolyMatrix(n, p);
    for (int t = 0; t < 4; ++t) {
      Exponent e({(int)(gen() % 3), (int)(gen() % 3)});
      int i = (int)(gen() % p), j = (int)(gen() % p);
      prob.objective.add_term(e, std::min(i, j), std::max(i, j), uni(gen));
    }
    for (int j = 0; j < p; ++j) prob.objective.add_term(Exponent(n), j, j, 2.0);
    if (gen() % 2) {
      SymPolyMatrix G(n, 1);
      G.add_term(Exponent(n), 0, 0, 1.0);
      G.add_term(E({(int)(1 + gen() % 2), 0}), 0, 0, -uni(gen));
      prob.constraints.push_back({G, ConstraintKind::inequality});
    }
    int r = min_relaxation_order(prob);
    TsState ts = ts_iterate(prob, r, ClosureKind::block, 100);
    REQUIRE(ts.stabilized);
    auto R = sign_symmetries(prob);
    for (int k = 0; k < (int)ts.graphs.size(); ++k) {
      auto classes = sign_symmetry_blocks(R, ts.basis[k], ts.copies[k]);
      std::vector<int> class_of(ts.basis[k].size() * ts.copies[k], -1);
      for (size_t c = 0; c < classes.size(); ++c)
        for (int node : classes[c]) class_of[node] = (int)c;
      for (auto& clique : ts.cliques(k, ClosureKind::block)) {
        if (clique.size() <= 1) continue;
        for (size_t idx = 1; idx < clique.size(); ++idx)
          CHECK(class_of[clique[idx]] == class_of[clique[0]]);
      }
    }
  }
}

TEST_CASE("verify_sos_sparse on the bivariate fixture") {
  SymPolyMatrix F = problems::bivariate_pair().objective;
  std::vector<MonomialBasis> bases(2, full_basis(2, 2));
  TsUnconstrained ts = ts_iterate_unconstrained(F, bases, ClosureKind::block, 50);
  CHECK(ts.stabilized);
  SosVerifyResult res = verify_sos_sparse(F, ts.graph, bases);
  REQUIRE(res.feasible);
  // reconstruct F from the Gram blocks
  Eigen::MatrixXd Q = assemble_full_gram(res, bases);
  SymPolyMatrix back = gram_reconstruct<double>(Q, bases, 2);
  for (auto& alpha : F.support())
    for (int u = 0; u < 2; ++u)
      for (int v = u; v < 2; ++v)
        CHECK(back.coeff(alpha, u, v) == doctest::Approx(F.coeff(alpha, u, v)).epsilon(1e-6));
}

TEST_CASE("verify_sos rejects -I and accepts R'R") {
  SymPolyMatrix mI(2, 2);
  mI.add_term(Exponent(2), 0, 0, -1.0);
  mI.add_term(Exponent(2), 1, 1, -1.0);
  std::vector<MonomialBasis> bases(2, full_basis(2, 1));
  SosVerifyResult bad = verify_sos_dense(mI, bases);
  CHECK_FALSE(bad.feasible);

  std::mt19937 gen(5);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int trial = 0; trial < 5; ++trial) {
    // F = R'R with R in the span of {1, x1, x2} per column
    int s = 3, p = 2;
    std::vector<std::vector<Poly>> R(s, std::vector<Poly>(p, Poly(2)));
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < p; ++j) {
        R[i][j].add_term(E({0, 0}), uni(gen));
        R[i][j].add_term(E({1, 0}), uni(gen));
        R[i][j].add_term(E({0, 1}), uni(gen));
      }
    SymPolyMatrix F(2, p);
    for (int a = 0; a < p; ++a)
      for (int b = a; b < p; ++b) {
        Poly acc(2);
        for (int i = 0; i < s; ++i) acc += R[i][a] * R[i][b];
        F.set_entry(a, b, acc);
      }
    SosVerifyResult good = verify_sos_dense(F, bases);
    CHECK(good.feasible);
  }
}

#include <random>
#include <sstream>

#include "doctest.h"
#include "pmo/graph.hpp"

using namespace pmo;

namespace {

SparsityGraph figure2_graph() {
  // cycle 1-2-3-4-5 with pendant 6 on 5, plus star 10-{7,8,9}
  SparsityGraph g(10);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(3, 4);
  g.add_edge(0, 4);
  g.add_edge(4, 5);
  g.add_edge(9, 6);
  g.add_edge(9, 7);
  g.add_edge(9, 8);
  return g;
}

SparsityGraph random_graph(std::mt19937& gen, int n, double density) {
  SparsityGraph g(n);
  std::uniform_real_distribution<double> uni(0, 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (uni(gen) < density) g.add_edge(a, b);
  return g;
}

}  // namespace

TEST_CASE("block closure completes components") {
  SparsityGraph g = figure2_graph();
  SparsityGraph bc = block_closure(g);
  auto comps = bc.connected_components();
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].size() == 6);
  CHECK(comps[1].size() == 4);
  // each component complete
  for (auto& comp : comps)
    for (size_t i = 0; i < comp.size(); ++i)
      for (size_t j = i + 1; j < comp.size(); ++j) CHECK(bc.has_edge(comp[i], comp[j]));
  CHECK(block_closure(bc) == bc);

  SparsityGraph edgeless(4);
  CHECK(block_closure(edgeless) == edgeless);
}

TEST_CASE("chordal closure of small graphs") {
  SparsityGraph c4(4);
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 0);
  CHECK_FALSE(is_chordal(c4));
  SparsityGraph cc = chordal_closure(c4);
  CHECK(is_chordal(cc));
  CHECK(cc.num_edges() == 5);  // one chord

  SparsityGraph tree(5);
  tree.add_edge(0, 1);
  tree.add_edge(1, 2);
  tree.add_edge(1, 3);
  tree.add_edge(3, 4);
  CHECK(is_chordal(tree));
  CHECK(chordal_closure(tree) == tree);

  // cycle of five with a pendant: two fill edges
  SparsityGraph g = figure2_graph();
  SparsityGraph gc = chordal_closure(g);
  CHECK(is_chordal(gc));
  CHECK(gc.num_edges() == g.num_edges() + 2);
}

TEST_CASE("maximal cliques") {
  SparsityGraph k5(5);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j) k5.add_edge(i, j);
  auto c = maximal_cliques(k5, true);
  REQUIRE(c.size() == 1);
  CHECK(c[0].size() == 5);

  SparsityGraph path(3);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  auto pc = maximal_cliques(path, true);
  REQUIRE(pc.size() == 2);
  CHECK(pc[0] == std::vector<int>{0, 1});
  CHECK(pc[1] == std::vector<int>{1, 2});

  // Bron-Kerbosch path agrees on a non-chordal graph
  SparsityGraph c4(4);
  c4.add_edge(0, 1);
  c4.add_edge(1, 2);
  c4.add_edge(2, 3);
  c4.add_edge(3, 0);
  auto bk = maximal_cliques(c4, false);
  REQUIRE(bk.size() == 4);
  for (auto& cl : bk) CHECK(cl.size() == 2);
  CHECK_THROWS(maximal_cliques(c4, true));
}

TEST_CASE("closures on random graphs: extensive, idempotent, ordered") {
  std::mt19937 gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 3 + (int)(gen() % 10);
    SparsityGraph g = random_graph(gen, n, 0.3);
    SparsityGraph cc = chordal_closure(g);
    SparsityGraph bc = block_closure(g);
    // extensive
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (g.has_edge(a, b)) {
          CHECK(cc.has_edge(a, b));
          CHECK(bc.has_edge(a, b));
        }
        // block closure dominates any chordal closure edgewise
        if (cc.has_edge(a, b)) CHECK(bc.has_edge(a, b));
      }
    // idempotent and chordal
    CHECK(chordal_closure(cc) == cc);
    CHECK(block_closure(bc) == bc);
    CHECK(is_chordal(cc));
    CHECK(is_chordal(bc));
    // cliques of a block closure are its components
    auto cliques = maximal_cliques(bc, true);
    auto comps = bc.connected_components();
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    CHECK(cliques == comps);
  }
}

TEST_CASE("dot export mentions every edge") {
  SparsityGraph g(3);
  g.add_edge(0, 1);
  std::ostringstream os;
  write_dot(os, g, {"a", "b", "c"});
  std::string s = os.str();
  CHECK(s.find("n0 -- n1") != std::string::npos);
  CHECK(s.find("label=\"a\"") != std::string::npos);
}

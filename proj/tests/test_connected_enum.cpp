#include "doctest.h"
#include "helpers.hpp"
#include "unbreak/connected_enum.hpp"
#include "unbreak/oracle.hpp"
#include "unbreak/universal.hpp"

using namespace unbreak;
using namespace unbreak::testing;

TEST_CASE("an isolated root yields only itself") {
  Graph g = from_edges(3, {{1, 2}});
  auto sets = enum_connected_sets(g, {0, 4, 2});
  REQUIRE(sets.size() == 1);
  CHECK(sets[0] == VertexSet{0});
}

TEST_CASE("star center with p=2 q=3") {
  Graph g = star_graph(3);
  auto sets = enum_connected_sets(g, {0, 2, 3});
  REQUIRE(sets.size() == 4);
  CHECK(sets[0] == VertexSet{0});
  CHECK(sets[1] == VertexSet{0, 1});
  CHECK(sets[2] == VertexSet{0, 2});
  CHECK(sets[3] == VertexSet{0, 3});
}

TEST_CASE("path with a tight neighborhood budget") {
  Graph g = path_graph(5);
  auto sets = enum_connected_sets(g, {2, 3, 1});
  // {2} has N = {1,3}, too wide; {2,3,4} and {0,1,2} fit
  CHECK(std::find(sets.begin(), sets.end(), VertexSet{2, 3, 4}) != sets.end());
  CHECK(std::find(sets.begin(), sets.end(), VertexSet{0, 1, 2}) != sets.end());
  CHECK(std::find(sets.begin(), sets.end(), VertexSet{2}) == sets.end());
  auto reference = oracle_connected_sets(g, {2, 3, 1});
  CHECK(sets == reference);
}

TEST_CASE("enumeration equals the oracle on random graphs") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + static_cast<int>(rng() % 8);
    Graph g = random_graph(n, 0.3, rng);
    int p = 1 + static_cast<int>(rng() % 4);
    int q = static_cast<int>(rng() % (8 - p + 1));
    Vertex root = static_cast<Vertex>(rng() % n);
    CAPTURE(trial);
    auto mine = enum_connected_sets(g, {root, p, q});
    auto reference = oracle_connected_sets(g, {root, p, q});
    CHECK(mine == reference);
    CHECK(mine.size() <= binomial(p + q, p));
    for (const VertexSet& u : mine) {
      CHECK(u.count(root));
      CHECK(static_cast<int>(u.size()) <= p);
      CHECK(connected_components(induced_subgraph(g, u)).size() == 1);
      CHECK(static_cast<int>(neighborhood(g, u, false).size()) <= q);
    }
  }
}

TEST_CASE("the visitor can stop early") {
  Graph g = complete_graph(6);
  int seen = 0;
  visit_connected_sets(g, {0, 3, 5}, [&](const VertexSet&) {
    ++seen;
    return seen < 2;
  });
  CHECK(seen == 2);
}

TEST_CASE("query validation") {
  Graph g = path_graph(2);
  CHECK_THROWS_AS(enum_connected_sets(g, {5, 1, 0}), Error);
  CHECK_THROWS_AS(enum_connected_sets(g, {0, 0, 1}), Error);
  CHECK_THROWS_AS(enum_connected_sets(g, {0, 1, -1}), Error);
}

#include <bit>

#include "doctest.h"
#include "helpers.hpp"
#include "unbreak/oracle.hpp"

using namespace unbreak;
using namespace unbreak::testing;

namespace {

// second enumeration order: iterate separator candidates descending and
// side assignments vertex-by-vertex instead of component groups
bool witness_exists_second_order(const Graph& g, int s, int c) {
  int n = g.num_vertices();
  std::vector<Vertex> verts = g.vertices();
  for (uint32_t smask = (1u << n); smask-- > 0;) {
    if (std::popcount(smask) > c) continue;
    VertexSet sep;
    for (int i = 0; i < n; ++i) {
      if ((smask >> i) & 1u) sep.insert(verts[i]);
    }
    std::vector<Vertex> rest;
    for (Vertex v : verts) {
      if (!sep.count(v)) rest.push_back(v);
    }
    int m = static_cast<int>(rest.size());
    for (uint32_t xmask = 0; xmask < (1u << m); ++xmask) {
      VertexSet x = sep, y = sep;
      for (int i = 0; i < m; ++i) {
        ((xmask >> i) & 1u ? x : y).insert(rest[i]);
      }
      if (static_cast<int>(x.size()) - static_cast<int>(sep.size()) <= s) continue;
      if (static_cast<int>(y.size()) - static_cast<int>(sep.size()) <= s) continue;
      if (is_separation(g, x, y)) return true;
    }
  }
  return false;
}

}  // namespace

TEST_CASE("oracle finds the bowtie witness and rejects K6") {
  Graph bowtie = from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  auto sep = oracle_witnessing_separation(bowtie, 1, 1);
  REQUIRE(sep.has_value());
  CHECK(is_witnessing(bowtie, *sep, {1, 1}));

  CHECK_FALSE(oracle_witnessing_separation(complete_graph(6), 1, 2).has_value());
}

TEST_CASE("oracle agrees with a second enumeration order") {
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    Graph g = random_graph(8, 0.2 + 0.1 * (trial % 4), rng);
    for (int s = 1; s <= 3; ++s) {
      for (int c = 0; c <= 2; ++c) {
        CAPTURE(trial);
        CAPTURE(s);
        CAPTURE(c);
        bool mine = oracle_witnessing_separation(g, s, c).has_value();
        CHECK(mine == witness_exists_second_order(g, s, c));
      }
    }
  }
}

TEST_CASE("oracle budget guards") {
  Graph big = path_graph(15);
  CHECK_THROWS_AS(oracle_witnessing_separation(big, 2, 1), BudgetError);
}

TEST_CASE("mwcu oracle basics") {
  // path a-x-b with separated singleton terminals
  MwcuInstance inst;
  inst.graph = path_graph(3);
  inst.terminals = {0, 2};
  inst.relation = {{0}, {2}};
  inst.k = 1;
  auto sol = oracle_mwcu(inst);
  REQUIRE(sol.has_value());
  CHECK(*sol == VertexSet{1});

  // adjacent terminals in different classes can never be separated
  MwcuInstance stuck;
  stuck.graph = from_edges(2, {{0, 1}});
  stuck.terminals = {0, 1};
  stuck.relation = {{0}, {1}};
  stuck.k = 2;
  CHECK_FALSE(oracle_mwcu(stuck).has_value());

  // deletions may not touch terminals even when k is generous
  MwcuInstance generous;
  generous.graph = path_graph(4);
  generous.terminals = {0, 3};
  generous.relation = {{0}, {3}};
  generous.k = 3;
  auto fix = oracle_mwcu(generous);
  REQUIRE(fix.has_value());
  for (Vertex v : *fix) CHECK_FALSE(generous.terminals.count(v));
}

TEST_CASE("mwcu oracle budget") {
  MwcuInstance inst;
  inst.graph = path_graph(13);
  inst.k = 1;
  CHECK_THROWS_AS(oracle_mwcu(inst), BudgetError);
}

TEST_CASE("connected-set oracle basics") {
  Graph g = from_edges(3, {{1, 2}});
  auto sets = oracle_connected_sets(g, {0, 3, 3});
  REQUIRE(sets.size() == 1);
  CHECK(sets[0] == VertexSet{0});

  // q = 0 only admits whole components
  Graph two = from_edges(4, {{0, 1}, {2, 3}});
  auto comps = oracle_connected_sets(two, {0, 4, 0});
  REQUIRE(comps.size() == 1);
  CHECK(comps[0] == VertexSet{0, 1});
}

TEST_CASE("equivalence oracle on constant_true counts compatibility types") {
  const Property* prop = find_property("constant_true");
  REQUIRE(prop);
  auto classes = oracle_equivalence(*prop, 2, 3, 3);
  CHECK(classes.size() == 4);  // one class per label subset of [2]
}

TEST_CASE("equivalence oracle splits parity classes in two per type") {
  const Property* prop = find_property("even_vertex_count");
  REQUIRE(prop);
  auto classes = oracle_equivalence(*prop, 2, 3, 3);
  CHECK(classes.size() == 8);
}

TEST_CASE("equivalence oracle matches the hand-derived connectivity count") {
  const Property* prop = find_property("is_connected");
  REQUIRE(prop);
  auto classes = oracle_equivalence(*prop, 2, 3, 3);
  CHECK(classes.size() == 10);
}

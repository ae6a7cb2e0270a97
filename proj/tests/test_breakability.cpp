#include "doctest.h"
#include "helpers.hpp"
#include "unbreak/breakability.hpp"
#include "unbreak/oracle.hpp"

using namespace unbreak;
using namespace unbreak::testing;

TEST_CASE("min_vertex_cut on small graphs") {
  Graph p3 = path_graph(3);
  CHECK(min_vertex_cut(p3, {0}, {2}) == VertexSet{1});

  // K4 minus the 0-1 edge: both remaining vertices must go
  Graph g = from_edges(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(min_vertex_cut(g, {0}, {1}) == VertexSet{2, 3});

  Graph split = from_edges(4, {{0, 1}, {2, 3}});
  CHECK(min_vertex_cut(split, {0}, {2}).empty());
}

TEST_CASE("min_vertex_cut agrees with exhaustive cut search") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(7, 0.35, rng);
    VertexSet a{0}, b{6};
    if (g.adjacent(0, 6)) continue;
    VertexSet cut = min_vertex_cut(g, a, b);
    // no smaller disjoint cut exists
    std::vector<Vertex> pool;
    for (Vertex v : g.vertices()) {
      if (!a.count(v) && !b.count(v)) pool.push_back(v);
    }
    int n = static_cast<int>(pool.size());
    int best = n + 1;
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
      VertexSet cand;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) cand.insert(pool[i]);
      }
      if (static_cast<int>(cand.size()) >= best) continue;
      Graph rest = induced_subgraph(g, set_difference(g.vertex_set(), cand));
      auto comps = connected_components(rest);
      bool separated = true;
      for (const auto& comp : comps) {
        if (comp.count(0) && comp.count(6)) separated = false;
      }
      if (separated) best = static_cast<int>(cand.size());
    }
    CHECK(static_cast<int>(cut.size()) == best);
    // the returned cut separates
    Graph rest = induced_subgraph(g, set_difference(g.vertex_set(), cut));
    for (const auto& comp : connected_components(rest)) {
      bool both = comp.count(0) > 0 && comp.count(6) > 0;
      CHECK_FALSE(both);
    }
  }
}

TEST_CASE("min_vertex_cut error conditions") {
  Graph g = path_graph(3);
  CHECK_THROWS_AS(min_vertex_cut(g, {0}, {0}), Error);       // overlap
  CHECK_THROWS_AS(min_vertex_cut(g, {0}, {1}), Error);       // adjacent
  CHECK_THROWS_AS(min_vertex_cut(g, {}, {1}), Error);        // empty side
}

TEST_CASE("large-component sweep finds the clique cut vertex") {
  // two K4 cliques joined through vertex 8
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) edges.push_back({i, j});
  }
  for (int i = 4; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) edges.push_back({i, j});
  }
  for (int i = 0; i < 8; ++i) edges.push_back({i, 8});
  Graph g = from_edges(9, edges);
  int s = 3, c = 1;
  auto sep = find_witness_large_components(g, s, c);
  REQUIRE(sep.has_value());
  CHECK(witness_holds(g, *sep, s / 2, c));
  CHECK(set_intersection(sep->x_side, sep->y_side) == VertexSet{8});
  // the oracle agrees that an (s,c)-witness exists at all
  CHECK(oracle_witnessing_separation(g, s, c).has_value());
}

TEST_CASE("large-component sweep declines complete graphs") {
  CHECK_FALSE(find_witness_large_components(complete_graph(8), 3, 2).has_value());
  // too few vertices for two sides
  CHECK_FALSE(find_witness_large_components(path_graph(2), 3, 1).has_value());
}

TEST_CASE("small-component sweep groups spider legs") {
  // hub 0 with 6 legs of length 3 each: s=6, c=1
  std::vector<std::pair<int, int>> edges;
  int next = 1;
  for (int leg = 0; leg < 6; ++leg) {
    edges.push_back({0, next});
    edges.push_back({next, next + 1});
    edges.push_back({next + 1, next + 2});
    next += 3;
  }
  Graph g = from_edges(next, edges);
  int s = 6, c = 1;
  auto sep = find_witness_small_components(g, s, c);
  REQUIRE(sep.has_value());
  CHECK(witness_holds(g, *sep, witness_threshold(s, c), c));
  OracleBudget wide;
  wide.max_vertices = 19;
  CHECK(oracle_witnessing_separation(g, witness_threshold(s, c), c, wide)
            .has_value());
}

TEST_CASE("small-component sweep early exits") {
  CHECK_FALSE(find_witness_small_components(path_graph(3), 2, 1).has_value());  // n < 2s
  CHECK_FALSE(find_witness_small_components(complete_graph(8), 3, 2).has_value());
}

TEST_CASE("break_alg on the spec instances") {
  // bowtie: witness at threshold floor(1/2) = 0
  Graph bowtie = from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  BreakOutcome out = break_alg(bowtie, 1, 1);
  REQUIRE_FALSE(out.unbreakable());
  CHECK(witness_holds(bowtie, *out.witness, 0, 1));

  // K6 is 5-connected
  BreakOutcome k6 = break_alg(complete_graph(6), 1, 2);
  CHECK(k6.unbreakable());
  CHECK(k6.certified_s == 1);
  CHECK(k6.certified_c == 2);

  // a path on 2s+3 vertices splits at the center
  int s = 3;
  BreakOutcome path = break_alg(path_graph(2 * s + 3), s, 1);
  REQUIRE_FALSE(path.unbreakable());
  CHECK(witness_holds(path_graph(2 * s + 3), *path.witness,
                      witness_threshold(s, 1), 1));
}

TEST_CASE("break_alg soundness and completeness on random graphs") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng() % 6);  // through n = 9
    double density = 0.15 + 0.1 * static_cast<double>(trial % 5);
    Graph g = random_graph(n, density, rng);
    for (int s = 1; s <= 3; ++s) {
      for (int c = 0; c <= 2; ++c) {
        CAPTURE(trial);
        CAPTURE(s);
        CAPTURE(c);
        BreakOutcome out = break_alg(g, s, c);
        if (!out.unbreakable()) {
          CHECK(witness_holds(g, *out.witness, witness_threshold(s, c), c));
        } else {
          CHECK_FALSE(oracle_witnessing_separation(g, s, c).has_value());
        }
      }
    }
  }
}

TEST_CASE("break_alg covers disconnected component grouping at c = 0") {
  // four K2 components: a (2,0)-witness needs two components a side
  Graph g = from_edges(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  BreakOutcome out = break_alg(g, 2, 0);
  REQUIRE_FALSE(out.unbreakable());
  CHECK(witness_holds(g, *out.witness, 2, 0));
}

TEST_CASE("break_alg is deterministic") {
  std::mt19937_64 rng(53);
  Graph g = random_graph(8, 0.3, rng);
  BreakOutcome a = break_alg(g, 3, 1);
  BreakOutcome b = break_alg(g, 3, 1);
  CHECK(a.unbreakable() == b.unbreakable());
  if (!a.unbreakable()) {
    CHECK(a.witness->x_side == b.witness->x_side);
    CHECK(a.witness->y_side == b.witness->y_side);
  }
}

TEST_CASE("parallel sweeps reduce to the same witness as one worker") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(7 + static_cast<int>(trial % 2), 0.25, rng);
    BreakOptions one{0, 1}, four{0, 4};
    for (int s = 1; s <= 3; ++s) {
      for (int c = 0; c <= 2; ++c) {
        BreakOutcome a = break_alg(g, s, c, one);
        BreakOutcome b = break_alg(g, s, c, four);
        CAPTURE(trial);
        CHECK(a.unbreakable() == b.unbreakable());
        if (!a.unbreakable()) {
          CHECK(a.witness->x_side == b.witness->x_side);
          CHECK(a.witness->y_side == b.witness->y_side);
        }
      }
    }
  }
}

TEST_CASE("witness_threshold applies the floor") {
  CHECK(witness_threshold(4, 0) == 4);
  CHECK(witness_threshold(4, 1) == 2);
  CHECK(witness_threshold(4, 2) == 1);
  CHECK(witness_threshold(1, 1) == 0);
  CHECK(witness_threshold(5, 64) == 0);
}

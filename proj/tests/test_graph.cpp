#include "doctest.h"
#include "helpers.hpp"
#include "unbreak/graph.hpp"

using namespace unbreak;
using namespace unbreak::testing;

TEST_CASE("is_separation on a single edge") {
  Graph g = from_edges(2, {{0, 1}});
  CHECK_FALSE(is_separation(g, {0}, {1}));  // the edge crosses
  CHECK(is_separation(g, {0, 1}, {1}));     // separator holds an endpoint
  CHECK_THROWS_AS(is_separation(g, {0, 7}, {1}), Error);
}

TEST_CASE("is_separation on a path, order via make_separation") {
  Graph g = path_graph(3);
  CHECK(is_separation(g, {0, 1}, {1, 2}));
  Separation sep = make_separation(g, {0, 1}, {1, 2});
  CHECK(sep.order == 1);
  CHECK_FALSE(is_separation(g, {0}, {2}));  // vertex 1 uncovered
}

TEST_CASE("self-loops never cross a separation") {
  Graph g = from_edges(2, {{0, 0}, {1, 1}});
  CHECK(is_separation(g, {0}, {1}));
}

TEST_CASE("is_witnessing splits a path at its center") {
  int s = 2;
  Graph g = path_graph(2 * s + 3);  // 0..6, center 3
  Separation sep = make_separation(g, {0, 1, 2, 3}, {3, 4, 5, 6});
  CHECK(is_witnessing(g, sep, {s, 1}));
  // monotone downward in s
  CHECK(is_witnessing(g, sep, {1, 1}));
}

TEST_CASE("is_witnessing rejects K5 separations of order <= 1") {
  Graph g = complete_graph(5);
  // the only separations of order <= 1 have an empty strict side
  Separation whole = make_separation(g, {0, 1, 2, 3, 4}, {0});
  CHECK_FALSE(is_witnessing(g, whole, {1, 1}));
}

TEST_CASE("is_witnessing accepts the bowtie split") {
  // two triangles sharing vertex 2
  Graph g = from_edges(5, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 4}});
  Separation sep = make_separation(g, {0, 1, 2}, {2, 3, 4});
  CHECK(is_witnessing(g, sep, {1, 1}));
  CHECK_FALSE(is_witnessing(g, sep, {2, 1}));  // sides have exactly 2 vertices
  CHECK_FALSE(is_witnessing(g, sep, {1, 0}));  // order 1 > 0
}

TEST_CASE("connected_components basics") {
  CHECK(connected_components(Graph()).empty());

  Graph g = from_edges(4, {{0, 1}, {1, 2}});
  auto comps = connected_components(g);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == VertexSet{0, 1, 2});
  CHECK(comps[1] == VertexSet{3});

  CHECK(connected_components(complete_graph(4)).size() == 1);
}

TEST_CASE("connected_components blocks partition the vertices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Graph g = random_graph(8, 0.3, rng);
    auto comps = connected_components(g);
    VertexSet all;
    size_t total = 0;
    for (const auto& comp : comps) {
      total += comp.size();
      all.insert(comp.begin(), comp.end());
    }
    CHECK(total == all.size());
    CHECK(all == g.vertex_set());
    for (const Edge& e : g.edges()) {
      for (const auto& comp : comps) {
        CHECK(comp.count(e.u) == comp.count(e.v));
      }
    }
  }
}

TEST_CASE("induced_subgraph keeps ids and multiplicities") {
  Graph k3 = complete_graph(3);
  Graph sub = induced_subgraph(k3, {0, 2});
  CHECK(sub.num_vertices() == 2);
  CHECK(sub.num_edges() == 1);
  CHECK(sub.has_vertex(2));

  CHECK(induced_subgraph(k3, {}).num_vertices() == 0);

  Graph doubled = from_edges(2, {{0, 1}, {0, 1}});
  CHECK(induced_subgraph(doubled, {0, 1}).num_edges() == 2);

  CHECK_THROWS_AS(induced_subgraph(k3, {9}), Error);
}

TEST_CASE("induced_subgraph on the full vertex set is the graph itself") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Graph g = random_graph(7, 0.4, rng);
    Graph same = induced_subgraph(g, g.vertex_set());
    CHECK(same.vertices() == g.vertices());
    REQUIRE(same.num_edges() == g.num_edges());
    for (int i = 0; i < g.num_edges(); ++i) {
      CHECK(same.edge(i).u == g.edge(i).u);
      CHECK(same.edge(i).v == g.edge(i).v);
    }
  }
}

TEST_CASE("induced_subgraph edge map points at surviving edges") {
  Graph g = from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  std::vector<int> edge_map;
  Graph sub = induced_subgraph(g, {1, 2, 3}, &edge_map);
  CHECK(edge_map[0] == -1);
  CHECK(edge_map[1] == 0);
  CHECK(edge_map[2] == 1);
  CHECK(sub.edge(0).joins(1, 2));
}

TEST_CASE("neighborhood open and closed") {
  Graph star = star_graph(3);
  CHECK(neighborhood(star, {0}, false) == VertexSet{1, 2, 3});
  CHECK(neighborhood(star, {0}, true) == VertexSet{0, 1, 2, 3});

  Graph lone = from_edges(1, {});
  CHECK(neighborhood(lone, {0}, false).empty());

  Graph p4 = path_graph(4);
  CHECK(neighborhood(p4, {1, 2}, false) == VertexSet{0, 3});
}

TEST_CASE("self-loops do not contribute to neighborhoods") {
  Graph g = from_edges(2, {{0, 0}, {0, 1}});
  CHECK(neighborhood(g, {0}, false) == VertexSet{1});
  CHECK(g.neighbors(0) == std::vector<Vertex>{1});
}

TEST_CASE("graph rejects bad construction") {
  CHECK_THROWS_AS(Graph({0, 1}, {Edge{0, 5}}), Error);
  CHECK_THROWS_AS(Graph({-1, 0}, {}), Error);
}

TEST_CASE("witnessing is monotone downward in s") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    Graph g = random_graph(7, 0.3, rng);
    auto comps = connected_components(g);
    if (comps.size() < 2) continue;
    VertexSet x = comps[0];
    VertexSet y = set_difference(g.vertex_set(), x);
    Separation sep = make_separation(g, x, y);
    for (int s = 4; s >= 1; --s) {
      if (is_witnessing(g, sep, {s, 2})) {
        for (int lower = s; lower >= 1; --lower) {
          CHECK(is_witnessing(g, sep, {lower, 2}));
        }
        break;
      }
    }
  }
}

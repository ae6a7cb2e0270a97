#include "doctest.h"
#include "helpers.hpp"
#include "unbreak/applications.hpp"
#include "unbreak/oracle.hpp"
#include "unbreak/treewidth.hpp"

using namespace unbreak;
using namespace unbreak::testing;

namespace {

MwcuInstance make_mwcu(Graph g, std::vector<VertexSet> classes, int k) {
  MwcuInstance inst;
  inst.graph = std::move(g);
  for (const auto& cls : classes) {
    inst.terminals.insert(cls.begin(), cls.end());
    inst.relation.push_back(cls);
  }
  inst.k = k;
  validate_mwcu(inst);
  return inst;
}

}  // namespace

TEST_CASE("reduction without terminals changes nothing") {
  MwcuInstance inst = make_mwcu(path_graph(4), {}, 1);
  RbcuReduction red = mwcu_to_rbcu(inst);
  CHECK(red.instance.red_edges.empty());
  CHECK(red.instance.graph.num_edges() == inst.graph.num_edges());
}

TEST_CASE("a related pair becomes one red edge") {
  MwcuInstance inst = make_mwcu(path_graph(3), {{0, 2}}, 1);
  RbcuReduction red = mwcu_to_rbcu(inst);
  REQUIRE(red.added_edges.size() == 1);
  CHECK(red.instance.graph.edge(red.added_edges[0]).joins(0, 2));
  CHECK(red.instance.red_edges.count(red.added_edges[0]) == 1);
}

TEST_CASE("a class of three terminals becomes a red triangle") {
  MwcuInstance inst = make_mwcu(complete_graph(5), {{0, 1, 2}}, 0);
  RbcuReduction red = mwcu_to_rbcu(inst);
  CHECK(red.added_edges.size() == 3);  // C(3,2) pairs, parallels allowed
  auto cliques = red_cliques(red.instance);
  REQUIRE(cliques.size() == 1);
  CHECK(cliques[0] == VertexSet{0, 1, 2});
}

TEST_CASE("singleton classes ride along as red self-loops") {
  MwcuInstance inst = make_mwcu(path_graph(3), {{0}, {2}}, 1);
  RbcuReduction red = mwcu_to_rbcu(inst);
  CHECK(red.added_edges.size() == 2);
  CHECK(red_vertex_cover_set(red.instance) == VertexSet{0, 2});
  auto cliques = red_cliques(red.instance);
  CHECK(cliques.size() == 2);
}

TEST_CASE("rbcu_check follows the solution definition") {
  RbcuInstance empty;
  empty.graph = path_graph(3);
  empty.k = 1;
  CHECK(rbcu_check(empty, {}));

  // path a-x-b with singleton classes {a} and {b}
  MwcuInstance inst = make_mwcu(path_graph(3), {{0}, {2}}, 1);
  RbcuInstance rb = mwcu_to_rbcu(inst).instance;
  CHECK(rbcu_check(rb, {1}));
  CHECK_FALSE(rbcu_check(rb, {}));   // 0 and 2 stay connected
  CHECK_FALSE(rbcu_check(rb, {0}));  // touches V[R]
  CHECK_FALSE(rbcu_check(rb, {1, 0}));
}

TEST_CASE("rbcu solver matches the spec's examples") {
  // no red cliques: the empty set is accepted immediately
  RbcuInstance empty;
  empty.graph = complete_graph(3);
  empty.k = 0;
  auto sol = rbcu_solve_unbreakable(empty, 2);
  REQUIRE(sol.has_value());
  CHECK(sol->empty());

  // triangle a-b-x with separated singletons: impossible at k = 1
  Graph tri = from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  MwcuInstance hard = make_mwcu(tri, {{0}, {1}}, 1);
  RbcuInstance rb_hard = mwcu_to_rbcu(hard).instance;
  CHECK_FALSE(rbcu_solve_unbreakable(rb_hard, 3).has_value());
  CHECK_FALSE(brute_force_rbcu(rb_hard).has_value());

  // path a-x-b: deleting x works
  MwcuInstance easy = make_mwcu(path_graph(3), {{0}, {2}}, 1);
  RbcuInstance rb_easy = mwcu_to_rbcu(easy).instance;
  auto fix = rbcu_solve_unbreakable(rb_easy, 3);
  REQUIRE(fix.has_value());
  CHECK(*fix == VertexSet{1});
}

TEST_CASE("rbcu solver agrees with brute force on unbreakable instances") {
  std::mt19937_64 rng(101);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 60; ++trial) {
    int n = 5 + static_cast<int>(rng() % 4);
    Graph g = random_connected_graph(n, 0.45, rng);
    int k = static_cast<int>(rng() % 3);
    int s_of_k = 2 + static_cast<int>(rng() % 3);
    // sample up to two disjoint terminal classes
    std::vector<VertexSet> classes;
    VertexSet used;
    int want = 1 + static_cast<int>(rng() % 2);
    for (int c = 0; c < want; ++c) {
      VertexSet cls;
      int size = 1 + static_cast<int>(rng() % 2);
      for (int tries = 0; tries < 10 && static_cast<int>(cls.size()) < size; ++tries) {
        Vertex v = static_cast<Vertex>(rng() % n);
        if (!used.count(v)) {
          cls.insert(v);
          used.insert(v);
        }
      }
      if (!cls.empty()) classes.push_back(cls);
    }
    if (classes.empty()) continue;
    MwcuInstance inst = make_mwcu(g, classes, k);
    RbcuInstance rb = mwcu_to_rbcu(inst).instance;
    if (oracle_witnessing_separation(rb.graph, s_of_k, k).has_value()) continue;
    ++tested;
    RbcuSolveStats stats;
    auto mine = rbcu_solve_unbreakable(rb, s_of_k, &stats);
    auto reference = brute_force_rbcu(rb);
    CAPTURE(trial);
    CHECK(mine.has_value() == reference.has_value());
    if (mine) {
      CHECK(rbcu_check(rb, *mine));
      CHECK(rbcu_component_bound_check(rb, *mine, s_of_k));
    }
    CHECK(stats.max_depth <= k + 1);
  }
  CHECK(tested >= 30);
}

TEST_CASE("component bound check fails on a breakable counterexample") {
  // two long disjoint paths, lone terminals on each: the empty set is a
  // valid solution but both red components are large
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < 6; ++i) edges.push_back({i, i + 1});
  for (int i = 6; i + 1 < 12; ++i) edges.push_back({i, i + 1});
  Graph g = from_edges(12, edges);
  MwcuInstance inst = make_mwcu(g, {{0}, {6}}, 0);
  RbcuInstance rb = mwcu_to_rbcu(inst).instance;
  REQUIRE(rbcu_check(rb, {}));
  CHECK_FALSE(rbcu_component_bound_check(rb, {}, 4));
  // and indeed the graph is (4,0)-breakable
  CHECK(oracle_witnessing_separation(g, 4, 0).has_value());
}

TEST_CASE("pendant solver basics") {
  const Property* always = find_property("constant_true");
  REQUIRE(always);

  // any single vertex works when t = 0 and k covers its degree
  Graph star = star_graph(3);
  PendantInstance inst{star, 3, 0, always};
  auto u = pendant_solve_unbreakable(inst, 2);
  REQUIRE(u.has_value());
  CHECK(u->size() == 1);
  CHECK(pendant_size_bound_check(*u, 2, 0));

  // even-order connected subgraph of a path
  const Property* even = find_property("even_vertex_count");
  Graph p6 = path_graph(6);
  PendantInstance even_inst{p6, 2, 1, even};
  auto w = pendant_solve_unbreakable(even_inst, 2);
  REQUIRE(w.has_value());
  CHECK(w->size() % 2 == 0);
  CHECK(connected_components(induced_subgraph(p6, *w)).size() == 1);
  CHECK(static_cast<int>(neighborhood(p6, *w, false).size()) <= 2);

  // k = 0 on a connected graph forces whole components
  Graph tri = complete_graph(3);
  PendantInstance no_room{tri, 0, 0, always};
  CHECK_FALSE(pendant_solve_unbreakable(no_room, 1).has_value());
}

TEST_CASE("pendant solver equals brute force") {
  std::mt19937_64 rng(103);
  const Property* even = find_property("even_vertex_count");
  const Property* conn = find_property("is_connected");
  int tested = 0;
  for (int trial = 0; trial < 150 && tested < 50; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    Graph g = random_connected_graph(n, 0.4, rng);
    int k = static_cast<int>(rng() % 3);
    int t = static_cast<int>(rng() % 2);
    int s_of_k = 2 + static_cast<int>(rng() % 2);
    const Property* prop = (trial % 2) ? even : conn;
    if (oracle_witnessing_separation(g, s_of_k, k + t).has_value()) continue;
    ++tested;
    PendantInstance inst{g, k, t, prop};
    auto mine = pendant_solve_unbreakable(inst, s_of_k);
    // brute force over all nonempty subsets
    bool exists = false;
    std::vector<Vertex> verts = g.vertices();
    for (uint32_t mask = 1; mask < (1u << n) && !exists; ++mask) {
      VertexSet u;
      for (int i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) u.insert(verts[i]);
      }
      if (connected_components(induced_subgraph(g, u)).size() != 1) continue;
      if (static_cast<int>(neighborhood(g, u, false).size()) > k) continue;
      if (exact_treewidth(induced_subgraph(g, u)) > t) continue;
      Structure s;
      s.graph = induced_subgraph(g, u);
      if (!prop->evaluate(s)) continue;
      exists = true;
    }
    CAPTURE(trial);
    CHECK(mine.has_value() == exists);
    if (mine) {
      CHECK(pendant_size_bound_check(*mine, s_of_k, t));
      Structure s;
      s.graph = induced_subgraph(g, *mine);
      CHECK(prop->evaluate(s));
    }
  }
  CHECK(tested >= 25);
}

TEST_CASE("instance validation") {
  MwcuInstance bad;
  bad.graph = path_graph(3);
  bad.terminals = {0, 2};
  bad.relation = {{0}};  // misses terminal 2
  bad.k = 1;
  CHECK_THROWS_AS(validate_mwcu(bad), Error);

  RbcuInstance not_cluster;
  not_cluster.graph = path_graph(3);
  not_cluster.red_edges = {0, 1};  // a red path is not a clique
  not_cluster.k = 0;
  CHECK_THROWS_AS(red_cliques(not_cluster), Error);
}

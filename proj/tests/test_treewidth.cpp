#include "doctest.h"
#include "helpers.hpp"
#include "unbreak/treewidth.hpp"

using namespace unbreak;
using namespace unbreak::testing;

TEST_CASE("treewidth of standard shapes") {
  CHECK(exact_treewidth(Graph()) == -1);
  CHECK(exact_treewidth(from_edges(1, {})) == 0);
  CHECK(exact_treewidth(from_edges(2, {})) == 0);
  CHECK(exact_treewidth(path_graph(6)) == 1);
  CHECK(exact_treewidth(star_graph(5)) == 1);
  CHECK(exact_treewidth(cycle_graph(5)) == 2);
  CHECK(exact_treewidth(complete_graph(5)) == 4);
}

TEST_CASE("treewidth of a 2x3 grid is 2") {
  // 0 1 2 / 3 4 5
  Graph g = from_edges(6, {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {0, 3}, {1, 4}, {2, 5}});
  CHECK(exact_treewidth(g) == 2);
}

TEST_CASE("treewidth ignores multiplicity and self-loops") {
  Graph g = from_edges(3, {{0, 1}, {0, 1}, {1, 2}, {2, 2}});
  CHECK(exact_treewidth(g) == 1);
}

TEST_CASE("treewidth of disconnected graphs takes the max part") {
  Graph g = from_edges(7, {{0, 1}, {1, 2}, {2, 0}, {3, 4}});
  CHECK(exact_treewidth(g) == 2);
}

TEST_CASE("treewidth budget is enforced") {
  CHECK_THROWS_AS(exact_treewidth(path_graph(17)), BudgetError);
}

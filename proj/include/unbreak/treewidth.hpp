#pragma once

#include "unbreak/graph.hpp"

namespace unbreak {

// Exact treewidth by dynamic programming over elimination orders.
// Intended for constant-size subgraphs; throws BudgetError above
// max_vertices (hard cap 16). The empty graph has treewidth -1 by the
// max-over-bags convention; a single vertex 0; a tree 1.
int exact_treewidth(const Graph& g, int max_vertices = 16);

}  // namespace unbreak

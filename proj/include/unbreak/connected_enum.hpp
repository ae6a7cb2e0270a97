#pragma once

#include <functional>
#include <vector>

#include "unbreak/graph.hpp"

namespace unbreak {

struct ConnectedSetQuery {
  Vertex root = 0;
  int p = 1;  // max set size, >= 1
  int q = 0;  // max open-neighborhood size, >= 0
};

// Exactly the sets U with root ∈ U, g[U] connected, |U| <= p and
// |N(U)| <= q, each once, in lexicographic order of the sorted id
// lists. The count never exceeds C(p+q, p): the search branches a
// frontier vertex into U or into a forbidden set F ⊆ N(U), so every
// root-to-leaf path makes at most p-1 take and q skip decisions.
std::vector<VertexSet> enum_connected_sets(const Graph& g,
                                           const ConnectedSetQuery& query);

// Streaming variant for large outputs; enumeration order is the branch
// order, not sorted. Return false from the visitor to stop early.
void visit_connected_sets(const Graph& g, const ConnectedSetQuery& query,
                          const std::function<bool(const VertexSet&)>& visit);

}  // namespace unbreak

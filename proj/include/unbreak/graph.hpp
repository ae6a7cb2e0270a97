#pragma once

#include <set>
#include <vector>

#include "unbreak/errors.hpp"

namespace unbreak {

using Vertex = int;
using VertexSet = std::set<Vertex>;

// Undirected edge. Self-loops (u == v) and parallel edges are allowed;
// edge identity is the index into Graph::edges(), which is stable and
// carried through induced subgraphs and gluing via explicit maps.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  bool joins(Vertex a, Vertex b) const {
    return (u == a && v == b) || (u == b && v == a);
  }
};

// Finite multigraph over non-negative integer ids. Immutable after
// construction; safe to share for concurrent reads. Iteration order is
// by ascending vertex id and ascending edge index throughout.
class Graph {
 public:
  Graph() = default;
  Graph(VertexSet vertices, std::vector<Edge> edges);

  // Vertices 0..n-1 plus the given edges.
  static Graph with_n(int n, std::vector<Edge> edges);

  int num_vertices() const { return static_cast<int>(verts_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Vertex>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int idx) const { return edges_.at(idx); }

  bool has_vertex(Vertex v) const;
  bool has_edge_index(int idx) const { return idx >= 0 && idx < num_edges(); }

  // Sorted distinct neighbors; self-loops never contribute.
  const std::vector<Vertex>& neighbors(Vertex v) const;
  // Indices of all incident edges, self-loops included.
  const std::vector<int>& incident_edges(Vertex v) const;

  bool adjacent(Vertex a, Vertex b) const;
  VertexSet vertex_set() const { return VertexSet(verts_.begin(), verts_.end()); }

 private:
  int pos(Vertex v) const;  // -1 if absent
  std::vector<Vertex> verts_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::vector<int>> inc_;
};

// Ordered pair (X, Y) covering V(G) with no X\Y -- Y\X edges.
struct Separation {
  VertexSet x_side;
  VertexSet y_side;
  int order = 0;  // |x_side ∩ y_side|
};

struct BreakParams {
  int s = 1;  // side-size threshold, >= 1
  int c = 0;  // separator budget, >= 0
};

// True iff x ∪ y = V(g) and no edge joins x\y to y\x. Throws on ids
// outside g. A self-loop can never cross a separation.
bool is_separation(const Graph& g, const VertexSet& x, const VertexSet& y);

// Validates and packages a separation; throws if is_separation fails.
Separation make_separation(const Graph& g, VertexSet x, VertexSet y);

// order <= c, |X\Y| > s and |Y\X| > s (strict on both sides).
bool is_witnessing(const Graph& g, const Separation& sep, BreakParams p);

// Blocks sorted by smallest member id; members sorted ascending.
std::vector<VertexSet> connected_components(const Graph& g);

// G[u] with original ids and edge multiplicities preserved. If edge_map
// is non-null it receives old-edge-index -> new-edge-index (-1 dropped).
Graph induced_subgraph(const Graph& g, const VertexSet& u,
                       std::vector<int>* edge_map = nullptr);

// Open neighborhood N(u) (excludes u) or closed N[u].
VertexSet neighborhood(const Graph& g, const VertexSet& u, bool closed);

// Convenience set helpers with deterministic results.
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);

}  // namespace unbreak

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "unbreak/graph.hpp"

namespace unbreak {

enum class Kind { Graph, Vertex, Edge, VertexSet, EdgeSet, Star };

const char* kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);

// One structure slot (positions 2..p). Edges are referenced by their
// stable index into the owning graph's edge list.
struct Element {
  Kind kind = Kind::Star;
  Vertex vertex = -1;
  int edge = -1;
  VertexSet vset;
  std::set<int> eset;

  static Element of_vertex(Vertex v);
  static Element of_edge(int edge_index);
  static Element of_vertex_set(VertexSet s);
  static Element of_edge_set(std::set<int> s);
  static Element star();

  bool operator==(const Element& o) const;
};

// Tuple of kinds; kinds[0] is always Kind::Graph.
struct TypeSignature {
  std::vector<Kind> kinds;

  static TypeSignature with_elements(std::vector<Kind> element_kinds);
  int arity() const { return static_cast<int>(kinds.size()); }
  bool operator==(const TypeSignature& o) const { return kinds == o.kinds; }
};

// Graph with an injectively labeled boundary. Labels are positive
// integers; the label set is derived, never stored separately.
class BoundariedGraph {
 public:
  BoundariedGraph() = default;
  BoundariedGraph(Graph graph, std::map<Vertex, int> labels);

  const Graph& graph() const { return graph_; }
  const std::map<Vertex, int>& labels() const { return labels_; }
  VertexSet boundary() const;
  std::set<int> label_set() const;
  bool in_boundary(Vertex v) const { return labels_.count(v) > 0; }
  std::optional<int> label_of(Vertex v) const;
  std::optional<Vertex> vertex_with_label(int label) const;

 private:
  Graph graph_;
  std::map<Vertex, int> labels_;
};

struct Structure {
  Graph graph;
  std::vector<Element> elements;
  int arity() const { return 1 + static_cast<int>(elements.size()); }
};

struct BoundariedStructure {
  BoundariedGraph bgraph;
  std::vector<Element> elements;
  int arity() const { return 1 + static_cast<int>(elements.size()); }
  const Graph& graph() const { return bgraph.graph(); }
};

TypeSignature type_of(const Structure& s);
TypeSignature type_of(const BoundariedStructure& s);

// Validates that an element only references vertices/edges of g.
void validate_element(const Graph& g, const Element& e, bool allow_star);

struct GlueResult {
  Graph graph;
  std::map<Vertex, Vertex> map_a;  // input vertex -> glued vertex
  std::map<Vertex, Vertex> map_b;
  std::vector<int> edge_map_a;  // input edge index -> glued edge index
  std::vector<int> edge_map_b;
};

// Disjoint union with equally-labeled boundary vertices identified.
// Every input edge survives as its own edge: gluing two boundary-to-
// boundary edges with matching labels yields parallel edges.
GlueResult glue_graphs(const BoundariedGraph& a, const BoundariedGraph& b);

// The four-part compatibility check. Star against star is rejected:
// no gluing rule could produce an output element from two stars.
bool compatible(const BoundariedStructure& a, const BoundariedStructure& b);

// Glues compatible structures; throws Error otherwise. Set elements
// unite through the identity maps; a star yields the other side's
// element; paired boundary vertices resolve to the identified vertex.
// Paired boundary edges stay parallel copies; the left copy is kept
// as the element.
Structure glue_structures(const BoundariedStructure& a,
                          const BoundariedStructure& b);

// Appends a vertex-set or edge-set element; arity grows by one.
Structure append(const Structure& s, const Element& x);

// Deterministic code; equal codes iff the structures are isomorphic by
// a label- and element-preserving isomorphism. Exact for graphs up to
// 10 vertices (minimization over vertex orderings with the boundary
// pinned by label order). Larger graphs get a hash prefixed "h!" that
// is only usable as a fast path for inequality.
std::string canonical_code(const BoundariedStructure& s);
std::string canonical_code(const Structure& s);

// Text serialization: graph format plus `b <vertex> <label>` and
// `x <index> <kind> <payload>` lines. Vertices are renumbered densely,
// so round-trips preserve the structure up to isomorphism (equal
// canonical codes), not raw ids.
std::string serialize_structure(const BoundariedStructure& s);

}  // namespace unbreak

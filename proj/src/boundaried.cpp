#include "unbreak/boundaried.hpp"

#include <algorithm>
#include <sstream>

namespace unbreak {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Graph: return "graph";
    case Kind::Vertex: return "vertex";
    case Kind::Edge: return "edge";
    case Kind::VertexSet: return "vset";
    case Kind::EdgeSet: return "eset";
    case Kind::Star: return "star";
  }
  return "?";
}

std::optional<Kind> kind_from_name(const std::string& name) {
  if (name == "graph") return Kind::Graph;
  if (name == "vertex") return Kind::Vertex;
  if (name == "edge") return Kind::Edge;
  if (name == "vset") return Kind::VertexSet;
  if (name == "eset") return Kind::EdgeSet;
  if (name == "star") return Kind::Star;
  return std::nullopt;
}

Element Element::of_vertex(Vertex v) {
  Element e;
  e.kind = Kind::Vertex;
  e.vertex = v;
  return e;
}
Element Element::of_edge(int edge_index) {
  Element e;
  e.kind = Kind::Edge;
  e.edge = edge_index;
  return e;
}
Element Element::of_vertex_set(VertexSet s) {
  Element e;
  e.kind = Kind::VertexSet;
  e.vset = std::move(s);
  return e;
}
Element Element::of_edge_set(std::set<int> s) {
  Element e;
  e.kind = Kind::EdgeSet;
  e.eset = std::move(s);
  return e;
}
Element Element::star() { return Element{}; }

bool Element::operator==(const Element& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::Vertex: return vertex == o.vertex;
    case Kind::Edge: return edge == o.edge;
    case Kind::VertexSet: return vset == o.vset;
    case Kind::EdgeSet: return eset == o.eset;
    default: return true;
  }
}

TypeSignature TypeSignature::with_elements(std::vector<Kind> element_kinds) {
  TypeSignature t;
  t.kinds.push_back(Kind::Graph);
  for (Kind k : element_kinds) {
    if (k == Kind::Graph) throw Error("signature: graph kind only at index 1");
    t.kinds.push_back(k);
  }
  return t;
}

BoundariedGraph::BoundariedGraph(Graph graph, std::map<Vertex, int> labels)
    : graph_(std::move(graph)), labels_(std::move(labels)) {
  std::set<int> seen;
  for (const auto& [v, l] : labels_) {
    if (!graph_.has_vertex(v)) throw Error("boundary vertex not in graph");
    if (l <= 0) throw Error("labels must be positive");
    if (!seen.insert(l).second) throw Error("labeling must be injective");
  }
}

VertexSet BoundariedGraph::boundary() const {
  VertexSet out;
  for (const auto& [v, l] : labels_) out.insert(v);
  return out;
}

std::set<int> BoundariedGraph::label_set() const {
  std::set<int> out;
  for (const auto& [v, l] : labels_) out.insert(l);
  return out;
}

std::optional<int> BoundariedGraph::label_of(Vertex v) const {
  auto it = labels_.find(v);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::optional<Vertex> BoundariedGraph::vertex_with_label(int label) const {
  for (const auto& [v, l] : labels_) {
    if (l == label) return v;
  }
  return std::nullopt;
}

void validate_element(const Graph& g, const Element& e, bool allow_star) {
  switch (e.kind) {
    case Kind::Graph:
      throw Error("element may not be a graph");
    case Kind::Star:
      if (!allow_star) throw Error("star element not allowed here");
      return;
    case Kind::Vertex:
      if (!g.has_vertex(e.vertex)) throw Error("element vertex not in graph");
      return;
    case Kind::Edge:
      if (!g.has_edge_index(e.edge)) throw Error("element edge not in graph");
      return;
    case Kind::VertexSet:
      for (Vertex v : e.vset) {
        if (!g.has_vertex(v)) throw Error("element vertex-set member not in graph");
      }
      return;
    case Kind::EdgeSet:
      for (int i : e.eset) {
        if (!g.has_edge_index(i)) throw Error("element edge-set member not in graph");
      }
      return;
  }
}

TypeSignature type_of(const Structure& s) {
  TypeSignature t;
  t.kinds.push_back(Kind::Graph);
  for (const Element& e : s.elements) t.kinds.push_back(e.kind);
  return t;
}

TypeSignature type_of(const BoundariedStructure& s) {
  TypeSignature t;
  t.kinds.push_back(Kind::Graph);
  for (const Element& e : s.elements) t.kinds.push_back(e.kind);
  return t;
}

GlueResult glue_graphs(const BoundariedGraph& a, const BoundariedGraph& b) {
  GlueResult out;
  Vertex next = 0;
  for (Vertex v : a.graph().vertices()) {
    out.map_a[v] = next++;
  }
  for (Vertex v : b.graph().vertices()) {
    auto lb = b.label_of(v);
    if (lb) {
      auto shared = a.vertex_with_label(*lb);
      if (shared) {
        out.map_b[v] = out.map_a[*shared];
        continue;
      }
    }
    out.map_b[v] = next++;
  }
  VertexSet verts;
  for (Vertex i = 0; i < next; ++i) verts.insert(i);
  std::vector<Edge> edges;
  out.edge_map_a.assign(a.graph().num_edges(), -1);
  out.edge_map_b.assign(b.graph().num_edges(), -1);
  for (int i = 0; i < a.graph().num_edges(); ++i) {
    const Edge& e = a.graph().edge(i);
    out.edge_map_a[i] = static_cast<int>(edges.size());
    edges.push_back(Edge{out.map_a.at(e.u), out.map_a.at(e.v)});
  }
  for (int i = 0; i < b.graph().num_edges(); ++i) {
    const Edge& e = b.graph().edge(i);
    out.edge_map_b[i] = static_cast<int>(edges.size());
    edges.push_back(Edge{out.map_b.at(e.u), out.map_b.at(e.v)});
  }
  out.graph = Graph(std::move(verts), std::move(edges));
  return out;
}

namespace {

bool boundary_edge(const BoundariedStructure& s, int edge_index,
                   std::pair<int, int>* label_pair) {
  const Edge& e = s.graph().edge(edge_index);
  auto lu = s.bgraph.label_of(e.u);
  auto lv = s.bgraph.label_of(e.v);
  if (!lu || !lv) return false;
  *label_pair = std::minmax(*lu, *lv);
  return true;
}

}  // namespace

bool compatible(const BoundariedStructure& a, const BoundariedStructure& b) {
  if (a.arity() != b.arity()) return false;
  for (size_t i = 0; i < a.elements.size(); ++i) {
    const Element& ea = a.elements[i];
    const Element& eb = b.elements[i];
    bool kinds_ok =
        (ea.kind == eb.kind && ea.kind != Kind::Star) ||
        ((ea.kind == Kind::Vertex || ea.kind == Kind::Edge) && eb.kind == Kind::Star) ||
        ((eb.kind == Kind::Vertex || eb.kind == Kind::Edge) && ea.kind == Kind::Star);
    if (!kinds_ok) return false;
    if (ea.kind == Kind::Vertex && eb.kind == Kind::Vertex) {
      auto la = a.bgraph.label_of(ea.vertex);
      auto lb = b.bgraph.label_of(eb.vertex);
      if (!la || !lb || *la != *lb) return false;
    }
    if (ea.kind == Kind::Edge && eb.kind == Kind::Edge) {
      std::pair<int, int> pa, pb;
      if (!boundary_edge(a, ea.edge, &pa)) return false;
      if (!boundary_edge(b, eb.edge, &pb)) return false;
      if (pa != pb) return false;
    }
  }
  return true;
}

Structure glue_structures(const BoundariedStructure& a,
                          const BoundariedStructure& b) {
  if (!compatible(a, b)) {
    throw Error("glue_structures: incompatible structures");
  }
  GlueResult glued = glue_graphs(a.bgraph, b.bgraph);
  Structure out;
  out.graph = glued.graph;
  for (size_t i = 0; i < a.elements.size(); ++i) {
    const Element& ea = a.elements[i];
    const Element& eb = b.elements[i];
    if (ea.kind == Kind::Star) {
      // kinds check guarantees eb is a vertex or an edge
      if (eb.kind == Kind::Vertex) {
        out.elements.push_back(Element::of_vertex(glued.map_b.at(eb.vertex)));
      } else {
        out.elements.push_back(Element::of_edge(glued.edge_map_b.at(eb.edge)));
      }
      continue;
    }
    if (eb.kind == Kind::Star) {
      if (ea.kind == Kind::Vertex) {
        out.elements.push_back(Element::of_vertex(glued.map_a.at(ea.vertex)));
      } else {
        out.elements.push_back(Element::of_edge(glued.edge_map_a.at(ea.edge)));
      }
      continue;
    }
    switch (ea.kind) {
      case Kind::Vertex: {
        Vertex va = glued.map_a.at(ea.vertex);
        Vertex vb = glued.map_b.at(eb.vertex);
        if (va != vb) throw InternalError("paired vertices did not identify");
        out.elements.push_back(Element::of_vertex(va));
        break;
      }
      case Kind::Edge:
        // both copies survive as parallel edges; keep the left one
        out.elements.push_back(Element::of_edge(glued.edge_map_a.at(ea.edge)));
        break;
      case Kind::VertexSet: {
        VertexSet s;
        for (Vertex v : ea.vset) s.insert(glued.map_a.at(v));
        for (Vertex v : eb.vset) s.insert(glued.map_b.at(v));
        out.elements.push_back(Element::of_vertex_set(std::move(s)));
        break;
      }
      case Kind::EdgeSet: {
        std::set<int> s;
        for (int e : ea.eset) s.insert(glued.edge_map_a.at(e));
        for (int e : eb.eset) s.insert(glued.edge_map_b.at(e));
        out.elements.push_back(Element::of_edge_set(std::move(s)));
        break;
      }
      default:
        throw InternalError("unexpected element kind in gluing");
    }
  }
  return out;
}

Structure append(const Structure& s, const Element& x) {
  if (x.kind != Kind::VertexSet && x.kind != Kind::EdgeSet) {
    throw Error("append: only vertex sets or edge sets can be appended");
  }
  validate_element(s.graph, x, false);
  Structure out = s;
  out.elements.push_back(x);
  return out;
}

namespace {

// Encoding of a boundaried structure under a fixed vertex ordering.
// Boundary vertices occupy the first positions, sorted by label; the
// given order lists the remaining vertices.
std::string encode_with_order(const BoundariedStructure& s,
                              const std::vector<Vertex>& boundary_by_label,
                              const std::vector<Vertex>& rest) {
  const Graph& g = s.graph();
  std::map<Vertex, int> posn;
  int p = 0;
  for (Vertex v : boundary_by_label) posn[v] = p++;
  for (Vertex v : rest) posn[v] = p++;

  int m = g.num_edges();
  std::vector<std::pair<int, int>> ends(m);
  for (int i = 0; i < m; ++i) {
    const Edge& e = g.edge(i);
    ends[i] = std::minmax(posn.at(e.u), posn.at(e.v));
  }
  std::vector<std::string> sig(m);
  for (int i = 0; i < m; ++i) {
    std::string t;
    for (const Element& el : s.elements) {
      if (el.kind == Kind::Edge && el.edge == i) {
        t += '=';
      } else if (el.kind == Kind::EdgeSet && el.eset.count(i)) {
        t += '1';
      } else {
        t += '0';
      }
    }
    sig[i] = std::move(t);
  }
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (ends[x] != ends[y]) return ends[x] < ends[y];
    return sig[x] < sig[y];
  });
  std::vector<int> canon_no(m);
  for (int r = 0; r < m; ++r) canon_no[order[r]] = r;

  std::ostringstream os;
  os << "n" << g.num_vertices() << ";b";
  for (Vertex v : boundary_by_label) os << *s.bgraph.label_of(v) << ",";
  os << ";e";
  for (int r = 0; r < m; ++r) {
    os << ends[order[r]].first << "-" << ends[order[r]].second << ",";
  }
  os << ";x";
  for (const Element& el : s.elements) {
    switch (el.kind) {
      case Kind::Star: os << "*"; break;
      case Kind::Vertex: os << "v" << posn.at(el.vertex); break;
      case Kind::Edge: os << "d" << canon_no[el.edge]; break;
      case Kind::VertexSet: {
        std::vector<int> ps;
        for (Vertex v : el.vset) ps.push_back(posn.at(v));
        std::sort(ps.begin(), ps.end());
        os << "V{";
        for (int q : ps) os << q << ",";
        os << "}";
        break;
      }
      case Kind::EdgeSet: {
        std::vector<int> ps;
        for (int e : el.eset) ps.push_back(canon_no[e]);
        std::sort(ps.begin(), ps.end());
        os << "D{";
        for (int q : ps) os << q << ",";
        os << "}";
        break;
      }
      default: break;
    }
    os << ";";
  }
  return os.str();
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

std::string canonical_code(const BoundariedStructure& s) {
  const Graph& g = s.graph();
  std::vector<std::pair<int, Vertex>> by_label;
  for (const auto& [v, l] : s.bgraph.labels()) by_label.push_back({l, v});
  std::sort(by_label.begin(), by_label.end());
  std::vector<Vertex> boundary;
  for (auto& [l, v] : by_label) boundary.push_back(v);
  std::vector<Vertex> rest;
  for (Vertex v : g.vertices()) {
    if (!s.bgraph.in_boundary(v)) rest.push_back(v);
  }

  if (g.num_vertices() > 10) {
    return "h!" + std::to_string(fnv1a(encode_with_order(s, boundary, rest)));
  }
  std::sort(rest.begin(), rest.end());
  std::string best;
  do {
    std::string code = encode_with_order(s, boundary, rest);
    if (best.empty() || code < best) best = std::move(code);
  } while (std::next_permutation(rest.begin(), rest.end()));
  if (best.empty()) best = encode_with_order(s, boundary, rest);
  return best;
}

std::string canonical_code(const Structure& s) {
  BoundariedStructure b;
  b.bgraph = BoundariedGraph(s.graph, {});
  b.elements = s.elements;
  return canonical_code(b);
}

std::string serialize_structure(const BoundariedStructure& s) {
  const Graph& g = s.graph();
  std::map<Vertex, int> ren;
  int next = 0;
  for (Vertex v : g.vertices()) ren[v] = next++;
  std::ostringstream os;
  os << "p " << g.num_vertices() << " " << g.num_edges() << "\n";
  for (const Edge& e : g.edges()) {
    os << "e " << ren.at(e.u) << " " << ren.at(e.v) << "\n";
  }
  for (const auto& [v, l] : s.bgraph.labels()) {
    os << "b " << ren.at(v) << " " << l << "\n";
  }
  int idx = 2;
  for (const Element& el : s.elements) {
    os << "x " << idx++ << " " << kind_name(el.kind);
    switch (el.kind) {
      case Kind::Vertex: os << " " << ren.at(el.vertex); break;
      case Kind::Edge: os << " " << el.edge; break;
      case Kind::VertexSet:
        for (Vertex v : el.vset) os << " " << ren.at(v);
        break;
      case Kind::EdgeSet:
        for (int e : el.eset) os << " " << e;
        break;
      default: break;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace unbreak

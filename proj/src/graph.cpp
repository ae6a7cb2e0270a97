#include "unbreak/graph.hpp"

#include <algorithm>

namespace unbreak {

Graph::Graph(VertexSet vertices, std::vector<Edge> edges)
    : verts_(vertices.begin(), vertices.end()), edges_(std::move(edges)) {
  for (Vertex v : verts_) {
    if (v < 0) throw Error("vertex ids must be non-negative");
  }
  adj_.assign(verts_.size(), {});
  inc_.assign(verts_.size(), {});
  for (int i = 0; i < num_edges(); ++i) {
    const Edge& e = edges_[i];
    int pu = pos(e.u), pv = pos(e.v);
    if (pu < 0 || pv < 0) {
      throw Error("edge endpoint not a vertex of the graph");
    }
    inc_[pu].push_back(i);
    if (pv != pu) inc_[pv].push_back(i);
    if (pu != pv) {
      adj_[pu].push_back(e.v);
      adj_[pv].push_back(e.u);
    }
  }
  for (auto& a : adj_) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
}

Graph Graph::with_n(int n, std::vector<Edge> edges) {
  VertexSet vs;
  for (int i = 0; i < n; ++i) vs.insert(i);
  return Graph(std::move(vs), std::move(edges));
}

int Graph::pos(Vertex v) const {
  auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
  if (it == verts_.end() || *it != v) return -1;
  return static_cast<int>(it - verts_.begin());
}

bool Graph::has_vertex(Vertex v) const { return pos(v) >= 0; }

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  int p = pos(v);
  if (p < 0) throw Error("neighbors: vertex not in graph");
  return adj_[p];
}

const std::vector<int>& Graph::incident_edges(Vertex v) const {
  int p = pos(v);
  if (p < 0) throw Error("incident_edges: vertex not in graph");
  return inc_[p];
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  if (a == b) return false;
  const auto& nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

bool is_separation(const Graph& g, const VertexSet& x, const VertexSet& y) {
  for (Vertex v : x) {
    if (!g.has_vertex(v)) throw Error("is_separation: id not in graph");
  }
  for (Vertex v : y) {
    if (!g.has_vertex(v)) throw Error("is_separation: id not in graph");
  }
  for (Vertex v : g.vertices()) {
    if (!x.count(v) && !y.count(v)) return false;
  }
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    bool u_only_x = x.count(e.u) && !y.count(e.u);
    bool u_only_y = y.count(e.u) && !x.count(e.u);
    bool v_only_x = x.count(e.v) && !y.count(e.v);
    bool v_only_y = y.count(e.v) && !x.count(e.v);
    if ((u_only_x && v_only_y) || (u_only_y && v_only_x)) return false;
  }
  return true;
}

Separation make_separation(const Graph& g, VertexSet x, VertexSet y) {
  if (!is_separation(g, x, y)) {
    throw Error("make_separation: (X,Y) is not a separation");
  }
  Separation sep;
  sep.order = static_cast<int>(set_intersection(x, y).size());
  sep.x_side = std::move(x);
  sep.y_side = std::move(y);
  return sep;
}

bool is_witnessing(const Graph& g, const Separation& sep, BreakParams p) {
  if (p.s < 1) throw Error("is_witnessing: s must be >= 1");
  if (p.c < 0) throw Error("is_witnessing: c must be >= 0");
  if (!is_separation(g, sep.x_side, sep.y_side)) {
    throw Error("is_witnessing: not a separation of g");
  }
  if (sep.order > p.c) return false;
  auto xo = set_difference(sep.x_side, sep.y_side);
  auto yo = set_difference(sep.y_side, sep.x_side);
  return static_cast<int>(xo.size()) > p.s && static_cast<int>(yo.size()) > p.s;
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> comps;
  VertexSet seen;
  for (Vertex start : g.vertices()) {
    if (seen.count(start)) continue;
    VertexSet comp;
    std::vector<Vertex> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      comp.insert(v);
      for (Vertex w : g.neighbors(v)) {
        if (!seen.count(w)) {
          seen.insert(w);
          stack.push_back(w);
        }
      }
    }
    comps.push_back(std::move(comp));
  }
  return comps;
}

Graph induced_subgraph(const Graph& g, const VertexSet& u,
                       std::vector<int>* edge_map) {
  for (Vertex v : u) {
    if (!g.has_vertex(v)) throw Error("induced_subgraph: id not in graph");
  }
  std::vector<Edge> kept;
  if (edge_map) edge_map->assign(g.num_edges(), -1);
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    if (u.count(e.u) && u.count(e.v)) {
      if (edge_map) (*edge_map)[i] = static_cast<int>(kept.size());
      kept.push_back(e);
    }
  }
  return Graph(u, std::move(kept));
}

VertexSet neighborhood(const Graph& g, const VertexSet& u, bool closed) {
  for (Vertex v : u) {
    if (!g.has_vertex(v)) throw Error("neighborhood: id not in graph");
  }
  VertexSet out;
  for (Vertex v : u) {
    for (Vertex w : g.neighbors(v)) {
      if (!u.count(w)) out.insert(w);
    }
  }
  if (closed) {
    for (Vertex v : u) out.insert(v);
  }
  return out;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  for (Vertex v : a) {
    if (b.count(v)) out.insert(v);
  }
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  for (Vertex v : a) {
    if (!b.count(v)) out.insert(v);
  }
  return out;
}

}  // namespace unbreak

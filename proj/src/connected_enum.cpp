#include "unbreak/connected_enum.hpp"

#include <algorithm>

namespace unbreak {

namespace {

struct Search {
  const Graph& g;
  int p;
  int q;
  const std::function<bool(const VertexSet&)>& visit;
  VertexSet in_set;
  VertexSet forbidden;  // always a subset of N(in_set)
  bool stopped = false;

  // smallest neighbor of the current set that is still unclassified
  Vertex frontier() const {
    Vertex best = -1;
    for (Vertex v : in_set) {
      for (Vertex w : g.neighbors(v)) {
        if (in_set.count(w) || forbidden.count(w)) continue;
        if (best < 0 || w < best) best = w;
      }
    }
    return best;
  }

  void run() {
    if (stopped) return;
    Vertex w = frontier();
    if (w < 0) {
      // N(in_set) == forbidden, so the neighborhood bound holds
      if (!visit(in_set)) stopped = true;
      return;
    }
    if (static_cast<int>(in_set.size()) < p) {
      in_set.insert(w);
      run();
      in_set.erase(w);
      if (stopped) return;
    }
    if (static_cast<int>(forbidden.size()) < q) {
      forbidden.insert(w);
      run();
      forbidden.erase(w);
    }
  }
};

}  // namespace

void visit_connected_sets(const Graph& g, const ConnectedSetQuery& query,
                          const std::function<bool(const VertexSet&)>& visit) {
  if (query.p < 1) throw Error("enum_connected_sets: p must be >= 1");
  if (query.q < 0) throw Error("enum_connected_sets: q must be >= 0");
  if (!g.has_vertex(query.root)) {
    throw Error("enum_connected_sets: root not in graph");
  }
  Search search{g, query.p, query.q, visit};
  search.in_set.insert(query.root);
  search.run();
}

std::vector<VertexSet> enum_connected_sets(const Graph& g,
                                           const ConnectedSetQuery& query) {
  std::vector<VertexSet> out;
  visit_connected_sets(g, query, [&](const VertexSet& u) {
    out.push_back(u);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace unbreak

#include "unbreak/applications.hpp"

#include <algorithm>

#include "unbreak/connected_enum.hpp"
#include "unbreak/treewidth.hpp"

namespace unbreak {

void validate_mwcu(const MwcuInstance& inst) {
  VertexSet seen;
  for (const VertexSet& cls : inst.relation) {
    if (cls.empty()) throw Error("mwcu: empty relation class");
    for (Vertex v : cls) {
      if (!inst.graph.has_vertex(v)) throw Error("mwcu: class member not in graph");
      if (!inst.terminals.count(v)) {
        throw Error("mwcu: class member is not a terminal");
      }
      if (!seen.insert(v).second) {
        throw Error("mwcu: relation classes must be disjoint");
      }
    }
  }
  if (seen != inst.terminals) {
    throw Error("mwcu: relation classes must cover all terminals");
  }
  if (inst.k < 0) throw Error("mwcu: k must be non-negative");
}

MwcuInstance mwcu_from_file(const ParsedGraphFile& parsed, int k) {
  MwcuInstance inst;
  inst.graph = parsed.graph;
  inst.terminals = VertexSet(parsed.terminals.begin(), parsed.terminals.end());
  for (const auto& cls : parsed.relation_classes) {
    inst.relation.push_back(VertexSet(cls.begin(), cls.end()));
  }
  inst.k = k;
  validate_mwcu(inst);
  return inst;
}

RbcuReduction mwcu_to_rbcu(const MwcuInstance& inst) {
  validate_mwcu(inst);
  RbcuReduction out;
  std::vector<Edge> edges = inst.graph.edges();
  for (const VertexSet& cls : inst.relation) {
    if (cls.size() == 1) {
      // self-loop keeps lone terminals inside V[R]
      Vertex v = *cls.begin();
      out.added_edges.push_back(static_cast<int>(edges.size()));
      edges.push_back(Edge{v, v});
      continue;
    }
    for (auto it = cls.begin(); it != cls.end(); ++it) {
      for (auto jt = std::next(it); jt != cls.end(); ++jt) {
        out.added_edges.push_back(static_cast<int>(edges.size()));
        edges.push_back(Edge{*it, *jt});
      }
    }
  }
  out.instance.graph = Graph(inst.graph.vertex_set(), std::move(edges));
  out.instance.red_edges.insert(out.added_edges.begin(), out.added_edges.end());
  out.instance.k = inst.k;
  red_cliques(out.instance);  // validates the cluster invariant
  return out;
}

VertexSet red_vertex_cover_set(const RbcuInstance& inst) {
  VertexSet out;
  for (int e : inst.red_edges) {
    const Edge& edge = inst.graph.edge(e);
    out.insert(edge.u);
    out.insert(edge.v);
  }
  return out;
}

std::vector<VertexSet> red_cliques(const RbcuInstance& inst) {
  for (int e : inst.red_edges) {
    if (!inst.graph.has_edge_index(e)) throw Error("rbcu: bad red edge index");
  }
  VertexSet vr = red_vertex_cover_set(inst);
  // components of the red subgraph on V[R]
  std::vector<Edge> redges;
  for (int e : inst.red_edges) redges.push_back(inst.graph.edge(e));
  Graph red_graph(vr, redges);
  auto comps = connected_components(red_graph);
  // cluster invariant: members of one component are pairwise red-adjacent
  for (const VertexSet& comp : comps) {
    for (auto it = comp.begin(); it != comp.end(); ++it) {
      for (auto jt = std::next(it); jt != comp.end(); ++jt) {
        bool found = false;
        for (int e : inst.red_edges) {
          if (inst.graph.edge(e).joins(*it, *jt)) {
            found = true;
            break;
          }
        }
        if (!found) {
          throw Error("rbcu: red edges do not induce a cluster graph");
        }
      }
    }
  }
  return comps;
}

namespace {

// components of (G \ S) \ R
std::vector<VertexSet> blue_components(const RbcuInstance& inst,
                                       const VertexSet& removed) {
  VertexSet verts = set_difference(inst.graph.vertex_set(), removed);
  std::vector<Edge> edges;
  for (int e = 0; e < inst.graph.num_edges(); ++e) {
    if (inst.red_edges.count(e)) continue;
    const Edge& edge = inst.graph.edge(e);
    if (verts.count(edge.u) && verts.count(edge.v)) edges.push_back(edge);
  }
  return connected_components(Graph(verts, edges));
}

int component_index(const std::vector<VertexSet>& comps, Vertex v) {
  for (size_t i = 0; i < comps.size(); ++i) {
    if (comps[i].count(v)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

bool rbcu_check(const RbcuInstance& inst, const VertexSet& solution) {
  if (static_cast<int>(solution.size()) > inst.k) return false;
  VertexSet vr = red_vertex_cover_set(inst);
  for (Vertex v : solution) {
    if (!inst.graph.has_vertex(v)) return false;
    if (vr.count(v)) return false;
  }
  auto comps = blue_components(inst, solution);
  std::vector<Vertex> red_list(vr.begin(), vr.end());
  for (size_t i = 0; i < red_list.size(); ++i) {
    for (size_t j = i + 1; j < red_list.size(); ++j) {
      Vertex u = red_list[i], v = red_list[j];
      bool same = component_index(comps, u) == component_index(comps, v);
      bool red = false;
      for (int e : inst.red_edges) {
        if (inst.graph.edge(e).joins(u, v)) {
          red = true;
          break;
        }
      }
      if (same != red) return false;
    }
  }
  return true;
}

namespace {

struct RbcuSearch {
  const RbcuInstance& inst;
  const std::vector<VertexSet>& cliques;
  const std::vector<std::vector<VertexSet>>& candidate_sets;
  RbcuSolveStats* stats;
  VertexSet found;

  bool branch(int allowed, const VertexSet& removed, int depth) {
    if (stats) {
      stats->calls++;
      stats->max_depth = std::max(stats->max_depth, depth);
    }
    if (static_cast<int>(removed.size()) > inst.k) return false;
    auto comps = blue_components(inst, removed);
    int r = static_cast<int>(cliques.size());
    std::vector<int> home(r);
    for (int j = 0; j < r; ++j) {
      home[j] = component_index(comps, *cliques[j].begin());
      for (Vertex v : cliques[j]) {
        if (removed.count(v) || component_index(comps, v) != home[j]) {
          return false;  // a clique was split or clipped
        }
      }
    }
    int violator = -1;
    for (int j = 0; j < r && violator < 0; ++j) {
      if (j == allowed) continue;
      for (int t = 0; t < r; ++t) {
        if (t != j && home[t] == home[j]) {
          violator = j;
          break;
        }
      }
    }
    if (violator < 0) {
      found = removed;
      return true;  // all cliques sit in distinct components
    }
    for (const VertexSet& u : candidate_sets[violator]) {
      VertexSet next = set_union(removed, neighborhood(inst.graph, u, false));
      if (next.size() == removed.size()) {
        throw InternalError("rbcu branch made no progress");
      }
      if (branch(allowed, next, depth + 1)) return true;
    }
    return false;
  }
};

}  // namespace

std::optional<VertexSet> rbcu_solve_unbreakable(const RbcuInstance& inst,
                                                int s_of_k,
                                                RbcuSolveStats* stats) {
  if (inst.k < 0) throw Error("rbcu: k must be non-negative");
  if (s_of_k < 1) throw Error("rbcu: s(k) must be positive");
  auto cliques = red_cliques(inst);
  if (cliques.empty()) {
    VertexSet empty;
    if (!rbcu_check(inst, empty)) {
      throw InternalError("rbcu: empty instance rejected its own solution");
    }
    return empty;
  }
  VertexSet vr = red_vertex_cover_set(inst);
  std::vector<std::vector<VertexSet>> candidate_sets(cliques.size());
  for (size_t j = 0; j < cliques.size(); ++j) {
    Vertex root = *cliques[j].begin();
    ConnectedSetQuery query{root, s_of_k, inst.k};
    for (const VertexSet& u : enum_connected_sets(inst.graph, query)) {
      bool contains_clique = std::includes(u.begin(), u.end(),
                                           cliques[j].begin(), cliques[j].end());
      if (!contains_clique) continue;
      VertexSet others = set_difference(vr, cliques[j]);
      if (!set_intersection(u, others).empty()) continue;
      candidate_sets[j].push_back(u);
    }
  }
  // TODO: drop the guessed index by branching on two violating cliques
  // at once, which removes the outer factor r.
  for (int i = 0; i < static_cast<int>(cliques.size()); ++i) {
    RbcuSearch search{inst, cliques, candidate_sets, stats, {}};
    if (search.branch(i, {}, 0)) {
      if (!rbcu_check(inst, search.found)) {
        throw InternalError("rbcu: accepted set failed verification");
      }
      return search.found;
    }
  }
  return std::nullopt;
}

bool rbcu_component_bound_check(const RbcuInstance& inst,
                                const VertexSet& solution, int s_of_k) {
  auto comps = blue_components(inst, solution);
  auto cliques = red_cliques(inst);
  int large = 0;
  for (const VertexSet& clique : cliques) {
    int home = component_index(comps, *clique.begin());
    if (home < 0) return false;
    if (static_cast<int>(comps[home].size()) > s_of_k) ++large;
  }
  return large <= 1;
}

std::optional<VertexSet> pendant_solve_unbreakable(const PendantInstance& inst,
                                                   int s_of_k) {
  if (!inst.prop) throw Error("pendant: missing property");
  if (inst.prop->arity() != 1) {
    throw Error("pendant: property must have arity 1");
  }
  if (inst.k < 0 || inst.t < 0 || s_of_k < 1) {
    throw Error("pendant: bad parameters");
  }
  int p_cap = 3 * (s_of_k + inst.t) - 1;
  if (p_cap > 16) {
    throw BudgetError("pendant: 3(s(k)+t)-1 exceeds the exact-treewidth budget");
  }
  for (Vertex v : inst.graph.vertices()) {
    ConnectedSetQuery query{v, p_cap, inst.k};
    for (const VertexSet& u : enum_connected_sets(inst.graph, query)) {
      if (*u.begin() != v) continue;  // each set once, at its smallest root
      Graph sub = induced_subgraph(inst.graph, u);
      if (exact_treewidth(sub) > inst.t) continue;
      Structure s;
      s.graph = sub;
      if (inst.prop->evaluate(s)) return u;
    }
  }
  return std::nullopt;
}

bool pendant_size_bound_check(const VertexSet& u, int s_of_k, int t) {
  return static_cast<int>(u.size()) < 3 * (s_of_k + t);
}

}  // namespace unbreak

#pragma once

#include <optional>
#include <random>
#include <vector>

#include "unbreak/applications.hpp"
#include "unbreak/graph.hpp"

namespace unbreak::testing {

inline Graph from_edges(int n, std::vector<std::pair<int, int>> pairs) {
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back(Edge{u, v});
  return Graph::with_n(n, std::move(edges));
}

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1});
  return Graph::with_n(n, std::move(edges));
}

inline Graph cycle_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back(Edge{i, i + 1});
  if (n > 2) edges.push_back(Edge{n - 1, 0});
  return Graph::with_n(n, std::move(edges));
}

inline Graph complete_graph(int n) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back(Edge{i, j});
  }
  return Graph::with_n(n, std::move(edges));
}

// center 0, leaves 1..leaves
inline Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back(Edge{0, i});
  return Graph::with_n(leaves + 1, std::move(edges));
}

inline Graph random_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.push_back(Edge{i, j});
    }
  }
  return Graph::with_n(n, std::move(edges));
}

inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  while (true) {
    Graph g = random_graph(n, p, rng);
    if (connected_components(g).size() <= 1) return g;
    // thread the components together with a random spanning chain
    auto comps = connected_components(g);
    std::vector<Edge> edges = g.edges();
    for (size_t i = 0; i + 1 < comps.size(); ++i) {
      std::uniform_int_distribution<int> pick_a(0, static_cast<int>(comps[i].size()) - 1);
      std::uniform_int_distribution<int> pick_b(0, static_cast<int>(comps[i + 1].size()) - 1);
      auto it_a = comps[i].begin();
      std::advance(it_a, pick_a(rng));
      auto it_b = comps[i + 1].begin();
      std::advance(it_b, pick_b(rng));
      edges.push_back(Edge{*it_a, *it_b});
    }
    return Graph(g.vertex_set(), std::move(edges));
  }
}

// reference solver used to check rbcu_solve_unbreakable: every subset
// of V \ V[R] up to size k against rbcu_check
inline std::optional<VertexSet> brute_force_rbcu(const RbcuInstance& inst) {
  VertexSet vr = red_vertex_cover_set(inst);
  std::vector<Vertex> pool;
  for (Vertex v : inst.graph.vertices()) {
    if (!vr.count(v)) pool.push_back(v);
  }
  int n = static_cast<int>(pool.size());
  if (n > 20) throw BudgetError("brute_force_rbcu: too many vertices");
  std::optional<VertexSet> best;
  for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
    VertexSet removed;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) removed.insert(pool[i]);
    }
    if (static_cast<int>(removed.size()) > inst.k) continue;
    if (!rbcu_check(inst, removed)) continue;
    if (!best || removed.size() < best->size() ||
        (removed.size() == best->size() && removed < *best)) {
      best = removed;
    }
  }
  return best;
}

}  // namespace unbreak::testing

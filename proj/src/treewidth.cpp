#include "unbreak/treewidth.hpp"

#include <bit>
#include <vector>

namespace unbreak {

int exact_treewidth(const Graph& g, int max_vertices) {
  int n = g.num_vertices();
  if (max_vertices > 16) max_vertices = 16;
  if (n > max_vertices) {
    throw BudgetError("exact_treewidth: graph larger than budget (" +
                      std::to_string(n) + " > " + std::to_string(max_vertices) +
                      ")");
  }
  if (n == 0) return -1;

  std::vector<uint32_t> adj(n, 0);
  const auto& verts = g.vertices();
  auto index_of = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) -
                            verts.begin());
  };
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    int a = index_of(e.u), b = index_of(e.v);
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }

  auto neighbors_of_mask = [&](uint32_t mask) {
    uint32_t nb = 0;
    for (uint32_t m = mask; m; m &= m - 1) {
      nb |= adj[std::countr_zero(m)];
    }
    return nb;
  };

  // q(S, v): neighbors outside S ∪ {v} of the part of S ∪ {v} reachable
  // from v through S.
  auto q_value = [&](uint32_t s, int v) {
    uint32_t reach = 1u << v;
    while (true) {
      uint32_t add = neighbors_of_mask(reach) & s & ~reach;
      if (!add) break;
      reach |= add;
    }
    uint32_t outside = neighbors_of_mask(reach) & ~(s | (1u << v));
    return std::popcount(outside);
  };

  uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<int8_t> tw(full + 1, 0);
  tw[0] = -1;
  for (uint32_t s = 1; s <= full; ++s) {
    int best = n;  // treewidth never exceeds n-1
    for (uint32_t m = s; m; m &= m - 1) {
      int v = std::countr_zero(m);
      uint32_t rest = s & ~(1u << v);
      int cost = std::max(static_cast<int>(tw[rest]), q_value(rest, v));
      if (cost < best) best = cost;
    }
    tw[s] = static_cast<int8_t>(best);
  }
  return tw[full];
}

}  // namespace unbreak

#include "unbreak/breakability.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>

namespace unbreak {

int witness_threshold(int s, int c) {
  if (c >= 63) return 0;
  return s >> c;
}

bool witness_holds(const Graph& g, const Separation& sep, int threshold, int c) {
  if (!is_separation(g, sep.x_side, sep.y_side)) return false;
  if (sep.order > c) return false;
  auto xo = set_difference(sep.x_side, sep.y_side);
  auto yo = set_difference(sep.y_side, sep.x_side);
  return static_cast<int>(xo.size()) > threshold &&
         static_cast<int>(yo.size()) > threshold;
}

namespace {

// Unit-capacity vertex flow: vertex v splits into in(v)->out(v) of
// capacity 1; a-side vertices feed the source, b-side the sink.
struct FlowNet {
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;
  int add_node() {
    adj.push_back({});
    return static_cast<int>(adj.size()) - 1;
  }
  void add_arc(int from, int to, int cap) {
    adj[from].push_back({to, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back({from, 0, static_cast<int>(adj[from].size()) - 1});
  }
};

constexpr int kInf = 1 << 28;

}  // namespace

VertexSet min_vertex_cut(const Graph& g, const VertexSet& a, const VertexSet& b) {
  if (a.empty() || b.empty()) throw Error("min_vertex_cut: sides must be nonempty");
  for (Vertex v : a) {
    if (b.count(v)) throw Error("min_vertex_cut: no disjoint cut exists");
  }
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    if ((a.count(e.u) && b.count(e.v)) || (a.count(e.v) && b.count(e.u))) {
      throw Error("min_vertex_cut: no disjoint cut exists");
    }
  }
  for (Vertex v : a) {
    if (!g.has_vertex(v)) throw Error("min_vertex_cut: id not in graph");
  }
  for (Vertex v : b) {
    if (!g.has_vertex(v)) throw Error("min_vertex_cut: id not in graph");
  }

  FlowNet net;
  int source = net.add_node();
  int sink = net.add_node();
  std::map<Vertex, std::pair<int, int>> split;  // free vertex -> (in, out)
  for (Vertex v : g.vertices()) {
    if (a.count(v) || b.count(v)) continue;
    int in = net.add_node();
    int out = net.add_node();
    net.add_arc(in, out, 1);
    split[v] = {in, out};
  }
  auto out_node = [&](Vertex v) -> int {
    if (a.count(v)) return source;
    return split.at(v).second;
  };
  auto in_node = [&](Vertex v) -> int {
    if (b.count(v)) return sink;
    return split.at(v).first;
  };
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    bool ua = a.count(e.u), va = a.count(e.v);
    bool ub = b.count(e.u), vb = b.count(e.v);
    if ((ua && va) || (ub && vb)) continue;
    // u -> v direction
    if (!ub && !va) net.add_arc(out_node(e.u), in_node(e.v), kInf);
    if (!vb && !ua) net.add_arc(out_node(e.v), in_node(e.u), kInf);
  }

  // Edmonds-Karp; the flow value is at most n
  int n_nodes = static_cast<int>(net.adj.size());
  while (true) {
    std::vector<int> prev_node(n_nodes, -1), prev_arc(n_nodes, -1);
    std::vector<int> queue{source};
    prev_node[source] = source;
    for (size_t qi = 0; qi < queue.size() && prev_node[sink] < 0; ++qi) {
      int u = queue[qi];
      for (size_t ai = 0; ai < net.adj[u].size(); ++ai) {
        const auto& arc = net.adj[u][ai];
        if (arc.cap > 0 && prev_node[arc.to] < 0) {
          prev_node[arc.to] = u;
          prev_arc[arc.to] = static_cast<int>(ai);
          queue.push_back(arc.to);
        }
      }
    }
    if (prev_node[sink] < 0) break;
    int v = sink;
    while (v != source) {
      int u = prev_node[v];
      auto& arc = net.adj[u][prev_arc[v]];
      arc.cap -= 1;
      net.adj[v][arc.rev].cap += 1;
      v = u;
    }
  }

  // residual reachability from the source
  std::vector<char> reach(n_nodes, 0);
  std::vector<int> queue{source};
  reach[source] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    for (const auto& arc : net.adj[queue[qi]]) {
      if (arc.cap > 0 && !reach[arc.to]) {
        reach[arc.to] = 1;
        queue.push_back(arc.to);
      }
    }
  }
  VertexSet cut;
  for (const auto& [v, nodes] : split) {
    if (reach[nodes.first] && !reach[nodes.second]) cut.insert(v);
  }
  return cut;
}

const UniversalFamily& cached_universal_set(int n, int k, int p, uint64_t seed) {
  static std::map<std::tuple<int, int, int, uint64_t>, UniversalFamily> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, k, p, seed);
  auto it = cache.find(key);
  if (it == cache.end()) {
    BuildOptions opts;
    opts.seed = seed;
    it = cache.emplace(key, build_universal_set(n, k, p, opts)).first;
  }
  return it->second;
}

namespace {

// Concatenation of the (n,k,p') families for p' = 0..min(c,k); one
// universal family per exact weight keeps 0/1 patterns with fewer than
// c ones realizable after padding the index set.
std::vector<uint64_t> sweep_family(int n, int k, int c, uint64_t seed) {
  std::vector<uint64_t> fns;
  std::set<uint64_t> seen;
  for (int p = 0; p <= std::min(c, k); ++p) {
    const UniversalFamily& f = cached_universal_set(n, k, p, seed);
    for (uint64_t fn : f.functions) {
      if (seen.insert(fn).second) fns.push_back(fn);
    }
  }
  return fns;
}

VertexSet zeros_of(const Graph& g, uint64_t f) {
  VertexSet out;
  int rank = 0;
  for (Vertex v : g.vertices()) {
    if (((f >> rank) & 1u) == 0) out.insert(v);
    ++rank;
  }
  return out;
}

VertexSet component_containing(const std::vector<VertexSet>& comps, Vertex v) {
  for (const auto& c : comps) {
    if (c.count(v)) return c;
  }
  throw InternalError("component_containing: vertex missing");
}

// Runs `probe` on family indices in ascending order, possibly fanned
// out over threads, and keeps the hit with the smallest index.
std::optional<Separation> first_hit(
    size_t family_size, int jobs,
    const std::function<std::optional<Separation>(size_t)>& probe) {
  if (jobs <= 1) {
    for (size_t i = 0; i < family_size; ++i) {
      auto sep = probe(i);
      if (sep) return sep;
    }
    return std::nullopt;
  }
  std::vector<std::pair<size_t, std::optional<Separation>>> results(
      jobs, {SIZE_MAX, std::nullopt});
  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) {
    threads.emplace_back([&, t]() {
      for (size_t i = t; i < family_size; i += jobs) {
        auto sep = probe(i);
        if (sep) {
          results[t] = {i, std::move(sep)};
          return;
        }
      }
    });
  }
  for (auto& th : threads) th.join();
  size_t best = SIZE_MAX;
  std::optional<Separation> out;
  for (auto& [idx, sep] : results) {
    if (idx < best) {
      best = idx;
      out = sep;
    }
  }
  return out;
}

}  // namespace

std::optional<Separation> find_witness_large_components(const Graph& g, int s,
                                                        int c,
                                                        const BreakOptions& opts) {
  if (s < 1) throw Error("find_witness_large_components: s must be >= 1");
  if (c < 0) throw Error("find_witness_large_components: c must be >= 0");
  int n = g.num_vertices();
  if (n == 0) return std::nullopt;
  int large_min = s / 2 + 1;
  int threshold = std::max(s / 2, witness_threshold(s, c));
  int k = std::min(n, 2 * large_min + c);
  auto fns = sweep_family(n, k, c, opts.seed);
  VertexSet all = g.vertex_set();

  auto probe = [&](size_t fi) -> std::optional<Separation> {
    VertexSet zeros = zeros_of(g, fns[fi]);
    Graph sub = induced_subgraph(g, zeros);
    auto comps = connected_components(sub);
    for (size_t i = 0; i < comps.size(); ++i) {
      for (size_t j = i + 1; j < comps.size(); ++j) {
        VertexSet cut = min_vertex_cut(g, comps[i], comps[j]);
        if (static_cast<int>(cut.size()) > c) continue;
        Graph rest = induced_subgraph(g, set_difference(all, cut));
        auto rest_comps = connected_components(rest);
        VertexSet side = component_containing(rest_comps, *comps[i].begin());
        Separation sep = make_separation(g, set_union(cut, side),
                                         set_union(cut, set_difference(all, side)));
        if (witness_holds(g, sep, threshold, c)) return sep;
      }
    }
    return std::nullopt;
  };
  return first_hit(fns.size(), opts.jobs, probe);
}

std::optional<Separation> find_witness_small_components(const Graph& g, int s,
                                                        int c,
                                                        const BreakOptions& opts) {
  if (s < 1) throw Error("find_witness_small_components: s must be >= 1");
  if (c < 0) throw Error("find_witness_small_components: c must be >= 0");
  int n = g.num_vertices();
  if (n < 2 * s) return std::nullopt;
  int small_max = s / 2;
  int trim_cap = (3 * s) / 2;
  int threshold = witness_threshold(s, c);
  int k = std::min(n, trim_cap + c);
  auto fns = sweep_family(n, k, c, opts.seed);
  VertexSet all = g.vertex_set();

  auto probe = [&](size_t fi) -> std::optional<Separation> {
    VertexSet zeros = zeros_of(g, fns[fi]);
    Graph sub = induced_subgraph(g, zeros);
    auto comps = connected_components(sub);
    std::vector<VertexSet> hoods(comps.size());
    for (size_t i = 0; i < comps.size(); ++i) {
      hoods[i] = neighborhood(g, comps[i], false);
    }
    std::set<VertexSet> tried;
    for (size_t ci = 0; ci < comps.size(); ++ci) {
      if (static_cast<int>(hoods[ci].size()) > c) continue;
      if (!tried.insert(hoods[ci]).second) continue;
      std::vector<size_t> group;
      int total = 0;
      for (size_t j = 0; j < comps.size(); ++j) {
        if (static_cast<int>(comps[j].size()) <= small_max &&
            hoods[j] == hoods[ci]) {
          group.push_back(j);
          total += static_cast<int>(comps[j].size());
        }
      }
      while (total > trim_cap && !group.empty()) {
        // drop the largest member, ties by smallest leading vertex
        size_t drop = 0;
        for (size_t gi = 1; gi < group.size(); ++gi) {
          if (comps[group[gi]].size() > comps[group[drop]].size()) drop = gi;
        }
        total -= static_cast<int>(comps[group[drop]].size());
        group.erase(group.begin() + drop);
      }
      if (group.empty()) continue;
      VertexSet a;
      for (size_t gi : group) a.insert(comps[gi].begin(), comps[gi].end());
      Separation sep = make_separation(g, neighborhood(g, a, true),
                                       set_difference(all, a));
      if (witness_holds(g, sep, threshold, c)) return sep;
    }
    return std::nullopt;
  };
  return first_hit(fns.size(), opts.jobs, probe);
}

namespace {

// Exact pass for c = 0: an order-0 witnessing separation is a
// bipartition of whole components with both sides larger than s, which
// the component-pair sweeps cannot assemble. Subset-sum over component
// sizes decides it exactly.
std::optional<Separation> find_witness_component_grouping(const Graph& g, int s) {
  auto comps = connected_components(g);
  int n = g.num_vertices();
  if (n <= 2 * s) return std::nullopt;
  size_t m = comps.size();
  if (m < 2) return std::nullopt;
  // reach[t] = index of the component first used to hit sum t, or -1
  std::vector<int> reach(n + 1, -1);
  std::vector<int> prev_sum(n + 1, -1);
  reach[0] = static_cast<int>(m);  // sentinel for the empty subset
  for (size_t i = 0; i < m; ++i) {
    int sz = static_cast<int>(comps[i].size());
    for (int t = n; t >= sz; --t) {
      if (reach[t] < 0 && reach[t - sz] >= 0) {
        reach[t] = static_cast<int>(i);
        prev_sum[t] = t - sz;
      }
    }
  }
  for (int t = s + 1; t + s + 1 <= n; ++t) {
    if (reach[t] < 0) continue;
    VertexSet x;
    int cur = t;
    while (cur > 0) {
      const VertexSet& comp = comps[reach[cur]];
      x.insert(comp.begin(), comp.end());
      cur = prev_sum[cur];
    }
    Separation sep = make_separation(g, x, set_difference(g.vertex_set(), x));
    if (witness_holds(g, sep, s, 0)) return sep;
    throw InternalError("component grouping produced a bad separation");
  }
  return std::nullopt;
}

}  // namespace

BreakOutcome break_alg(const Graph& g, int s, int c, const BreakOptions& opts) {
  if (s < 1) throw Error("break_alg: s must be >= 1");
  if (c < 0) throw Error("break_alg: c must be >= 0");
  int threshold = witness_threshold(s, c);
  auto emit = [&](Separation sep) {
    if (!witness_holds(g, sep, threshold, c)) {
      throw InternalError("break_alg: emitted separation failed verification");
    }
    BreakOutcome out;
    out.witness = std::move(sep);
    return out;
  };
  if (auto w = find_witness_large_components(g, s, c, opts)) return emit(*w);
  if (auto w = find_witness_small_components(g, s, c, opts)) return emit(*w);
  if (c == 0) {
    if (auto w = find_witness_component_grouping(g, s)) return emit(*w);
  }
  BreakOutcome out;
  out.certified_s = s;
  out.certified_c = c;
  return out;
}

}  // namespace unbreak

#include "unbreak/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace unbreak {

std::optional<Separation> oracle_witnessing_separation(const Graph& g, int s,
                                                       int c,
                                                       const OracleBudget& budget) {
  if (s < 1) throw Error("oracle: s must be >= 1");
  if (c < 0) throw Error("oracle: c must be >= 0");
  int n = g.num_vertices();
  if (n > budget.max_vertices) {
    throw BudgetError("oracle_witnessing_separation: graph above budget");
  }
  std::vector<Vertex> verts = g.vertices();
  // separator candidates of size 0..c, by size then lexicographic
  auto try_separator = [&](const VertexSet& sep) -> std::optional<Separation> {
    Graph rest = induced_subgraph(g, set_difference(g.vertex_set(), sep));
    auto comps = connected_components(rest);
    size_t nc = comps.size();
    if (nc < 2) return std::nullopt;
    for (uint64_t mask = 1; mask + 1 < (1ull << nc); ++mask) {
      int left = 0;
      for (size_t i = 0; i < nc; ++i) {
        if ((mask >> i) & 1u) left += static_cast<int>(comps[i].size());
      }
      int right = n - static_cast<int>(sep.size()) - left;
      if (left > s && right > s) {
        VertexSet x = sep, y = sep;
        for (size_t i = 0; i < nc; ++i) {
          auto& side = ((mask >> i) & 1u) ? x : y;
          side.insert(comps[i].begin(), comps[i].end());
        }
        return make_separation(g, x, y);
      }
    }
    return std::nullopt;
  };
  for (int size = 0; size <= std::min(c, n); ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    bool more = true;
    while (more) {
      VertexSet sep;
      for (int i : pick) sep.insert(verts[i]);
      if (auto found = try_separator(sep)) return found;
      more = false;
      for (int i = size - 1; i >= 0; --i) {
        if (pick[i] < n - size + i) {
          ++pick[i];
          for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          more = true;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<VertexSet> oracle_mwcu(const MwcuInstance& inst,
                                     const OracleBudget& budget) {
  validate_mwcu(inst);
  int n = inst.graph.num_vertices();
  if (n > budget.max_mwcu_vertices || inst.k > budget.max_mwcu_k) {
    throw BudgetError("oracle_mwcu: instance above budget");
  }
  std::map<Vertex, int> class_of;
  for (size_t i = 0; i < inst.relation.size(); ++i) {
    for (Vertex v : inst.relation[i]) class_of[v] = static_cast<int>(i);
  }
  std::vector<Vertex> pool;
  for (Vertex v : inst.graph.vertices()) {
    if (!inst.terminals.count(v)) pool.push_back(v);
  }
  std::vector<Vertex> terms(inst.terminals.begin(), inst.terminals.end());

  auto solves = [&](const VertexSet& removed) {
    Graph rest =
        induced_subgraph(inst.graph, set_difference(inst.graph.vertex_set(), removed));
    auto comps = connected_components(rest);
    auto comp_of = [&](Vertex v) {
      for (size_t i = 0; i < comps.size(); ++i) {
        if (comps[i].count(v)) return static_cast<int>(i);
      }
      return -1;
    };
    for (size_t i = 0; i < terms.size(); ++i) {
      for (size_t j = i + 1; j < terms.size(); ++j) {
        bool same = comp_of(terms[i]) == comp_of(terms[j]);
        bool related = class_of[terms[i]] == class_of[terms[j]];
        if (same != related) return false;
      }
    }
    return true;
  };

  int pool_size = static_cast<int>(pool.size());
  for (int size = 0; size <= std::min(inst.k, pool_size); ++size) {
    std::vector<int> pick(size);
    for (int i = 0; i < size; ++i) pick[i] = i;
    bool more = true;
    while (more) {
      VertexSet removed;
      for (int i : pick) removed.insert(pool[i]);
      if (solves(removed)) return removed;
      more = false;
      for (int i = size - 1; i >= 0; --i) {
        if (pick[i] < pool_size - size + i) {
          ++pick[i];
          for (int j = i + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          more = true;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<VertexSet> oracle_connected_sets(const Graph& g,
                                             const ConnectedSetQuery& query,
                                             const OracleBudget& budget) {
  if (query.p < 1 || query.q < 0) throw Error("oracle_connected_sets: bad query");
  if (!g.has_vertex(query.root)) {
    throw Error("oracle_connected_sets: root not in graph");
  }
  int n = g.num_vertices();
  if (n > budget.max_subsets_log2) {
    throw BudgetError("oracle_connected_sets: graph above budget");
  }
  std::vector<Vertex> verts = g.vertices();
  std::vector<VertexSet> out;
  for (uint64_t mask = 1; mask < (1ull << n); ++mask) {
    VertexSet u;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) u.insert(verts[i]);
    }
    if (!u.count(query.root)) continue;
    if (static_cast<int>(u.size()) > query.p) continue;
    if (connected_components(induced_subgraph(g, u)).size() != 1) continue;
    if (static_cast<int>(neighborhood(g, u, false).size()) > query.q) continue;
    out.push_back(std::move(u));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence oracle. Everything below re-derives the bounded universe
// and the glued evaluations from the definitions, in a deliberately
// flat raw-enumeration style.

namespace {

struct OStruct {
  int v = 0;
  uint32_t adj = 0;                 // bit (i*6 + j) for i < j, 6-wide rows
  std::array<int8_t, 6> label{};    // 0 = unlabeled
  struct OElem {
    Kind kind = Kind::Star;
    int vertex = -1;
    int eu = -1, ev = -1;
    uint32_t vset = 0;
    uint32_t eset = 0;  // bits aligned with adj
  };
  std::vector<OElem> elems;

  auto key() const {
    std::vector<int64_t> k{v, static_cast<int64_t>(adj)};
    for (int i = 0; i < v; ++i) k.push_back(label[i]);
    for (const OElem& e : elems) {
      k.push_back(e.vertex);
      k.push_back(e.eu * 16 + e.ev);
      k.push_back(e.vset);
      k.push_back(e.eset);
    }
    return k;
  }
};

int obit(int i, int j) {
  if (i > j) std::swap(i, j);
  return i * 6 + j;
}

OStruct opermute(const OStruct& s, const std::vector<int>& perm) {
  OStruct out;
  out.v = s.v;
  for (int i = 0; i < s.v; ++i) {
    out.label[perm[i]] = s.label[i];
    for (int j = i + 1; j < s.v; ++j) {
      if ((s.adj >> obit(i, j)) & 1u) out.adj |= 1u << obit(perm[i], perm[j]);
    }
  }
  for (const auto& e : s.elems) {
    OStruct::OElem oe;
    oe.kind = e.kind;
    if (e.kind == Kind::Vertex && e.vertex >= 0) oe.vertex = perm[e.vertex];
    else oe.vertex = e.vertex;
    if (e.kind == Kind::Edge && e.eu >= 0) {
      oe.eu = std::min(perm[e.eu], perm[e.ev]);
      oe.ev = std::max(perm[e.eu], perm[e.ev]);
    } else {
      oe.eu = e.eu;
      oe.ev = e.ev;
    }
    if (e.kind == Kind::VertexSet) {
      for (int i = 0; i < s.v; ++i) {
        if ((e.vset >> i) & 1u) oe.vset |= 1u << perm[i];
      }
    }
    if (e.kind == Kind::EdgeSet) {
      for (int i = 0; i < s.v; ++i) {
        for (int j = i + 1; j < s.v; ++j) {
          if ((e.eset >> obit(i, j)) & 1u) oe.eset |= 1u << obit(perm[i], perm[j]);
        }
      }
    }
    out.elems.push_back(oe);
  }
  return out;
}

BoundariedStructure to_structure(const OStruct& s) {
  VertexSet vs;
  for (int i = 0; i < s.v; ++i) vs.insert(i);
  std::vector<Edge> edges;
  std::map<int, int> eidx;
  for (int i = 0; i < s.v; ++i) {
    for (int j = i + 1; j < s.v; ++j) {
      if ((s.adj >> obit(i, j)) & 1u) {
        eidx[obit(i, j)] = static_cast<int>(edges.size());
        edges.push_back(Edge{i, j});
      }
    }
  }
  std::map<Vertex, int> labels;
  for (int i = 0; i < s.v; ++i) {
    if (s.label[i] > 0) labels[i] = s.label[i];
  }
  BoundariedStructure out;
  out.bgraph = BoundariedGraph(Graph(vs, edges), labels);
  for (const auto& e : s.elems) {
    switch (e.kind) {
      case Kind::Vertex:
        out.elements.push_back(e.vertex < 0 ? Element::star()
                                            : Element::of_vertex(e.vertex));
        break;
      case Kind::Edge:
        out.elements.push_back(e.eu < 0 ? Element::star()
                                        : Element::of_edge(eidx.at(obit(e.eu, e.ev))));
        break;
      case Kind::VertexSet: {
        VertexSet set;
        for (int i = 0; i < s.v; ++i) {
          if ((e.vset >> i) & 1u) set.insert(i);
        }
        out.elements.push_back(Element::of_vertex_set(set));
        break;
      }
      case Kind::EdgeSet: {
        std::set<int> set;
        for (auto& [bit, idx] : eidx) {
          if ((e.eset >> bit) & 1u) set.insert(idx);
        }
        out.elements.push_back(Element::of_edge_set(set));
        break;
      }
      default:
        throw InternalError("oracle: bad element kind");
    }
  }
  return out;
}

// per-slot compatibility signature, re-derived from the definition
struct OSig {
  std::set<int> labels;
  std::vector<std::array<int, 3>> slots;  // (class, a, b)
  bool operator<(const OSig& o) const {
    if (labels != o.labels) return labels < o.labels;
    return slots < o.slots;
  }
  bool operator==(const OSig& o) const {
    return labels == o.labels && slots == o.slots;
  }
};

OSig osig(const OStruct& s) {
  OSig sig;
  for (int i = 0; i < s.v; ++i) {
    if (s.label[i] > 0) sig.labels.insert(s.label[i]);
  }
  for (const auto& e : s.elems) {
    switch (e.kind) {
      case Kind::Vertex:
        if (e.vertex < 0) {
          sig.slots.push_back({0, 0, 0});  // star payload
        } else if (s.label[e.vertex] > 0) {
          sig.slots.push_back({1, s.label[e.vertex], 0});
        } else {
          sig.slots.push_back({2, 0, 0});
        }
        break;
      case Kind::Edge: {
        if (e.eu < 0) {
          sig.slots.push_back({0, 0, 0});  // star payload
          break;
        }
        int lu = s.label[e.eu], lv = s.label[e.ev];
        if (lu > 0 && lv > 0) {
          sig.slots.push_back({3, std::min(lu, lv), std::max(lu, lv)});
        } else {
          sig.slots.push_back({4, 0, 0});
        }
        break;
      }
      case Kind::VertexSet:
        sig.slots.push_back({5, 0, 0});
        break;
      case Kind::EdgeSet:
        sig.slots.push_back({6, 0, 0});
        break;
      default:
        throw InternalError("oracle: bad slot kind");
    }
  }
  return sig;
}

bool oslot_compatible(const std::array<int, 3>& a, const std::array<int, 3>& b) {
  if (a[0] == 5 || a[0] == 6 || b[0] == 5 || b[0] == 6) return a == b;
  if (a[0] == 0) return b[0] != 0;
  if (b[0] == 0) return true;
  if (a[0] == 1 && b[0] == 1) return a == b;
  if (a[0] == 3 && b[0] == 3) return a == b;
  return false;  // free vertices/edges only pair with a star
}

bool ocompatible(const OSig& a, const OSig& b) {
  if (a.slots.size() != b.slots.size()) return false;
  for (size_t i = 0; i < a.slots.size(); ++i) {
    if (!oslot_compatible(a.slots[i], b.slots[i])) return false;
  }
  return true;
}

// gluing re-derived: b's labeled vertices merge onto a's label mates,
// everything else shifts up; output lands directly in compact form
CompactStructure oglue(const OStruct& a, const OStruct& b) {
  CompactStructure out;
  int map_b[6];
  int n = a.v;
  for (int i = 0; i < b.v; ++i) {
    map_b[i] = -1;
    if (b.label[i] > 0) {
      for (int j = 0; j < a.v; ++j) {
        if (a.label[j] == b.label[i]) map_b[i] = j;
      }
    }
    if (map_b[i] < 0) map_b[i] = n++;
  }
  out.n = n;
  for (int i = 0; i < a.v; ++i) {
    for (int j = i + 1; j < a.v; ++j) {
      if ((a.adj >> obit(i, j)) & 1u) {
        out.adj[i] |= static_cast<uint16_t>(1u << j);
        out.adj[j] |= static_cast<uint16_t>(1u << i);
      }
    }
  }
  for (int i = 0; i < b.v; ++i) {
    for (int j = i + 1; j < b.v; ++j) {
      if ((b.adj >> obit(i, j)) & 1u) {
        out.adj[map_b[i]] |= static_cast<uint16_t>(1u << map_b[j]);
        out.adj[map_b[j]] |= static_cast<uint16_t>(1u << map_b[i]);
      }
    }
  }
  for (size_t s = 0; s < a.elems.size(); ++s) {
    const auto& ea = a.elems[s];
    const auto& eb = b.elems[s];
    bool a_star = (ea.kind == Kind::Vertex && ea.vertex < 0) ||
                  (ea.kind == Kind::Edge && ea.eu < 0);
    CompactStructure::Elem ce;
    ce.kind = ea.kind;
    switch (ea.kind) {
      case Kind::Vertex:
        ce.vertex = a_star ? map_b[eb.vertex] : ea.vertex;
        break;
      case Kind::Edge:
        if (!a_star) {
          ce.eu = ea.eu;
          ce.ev = ea.ev;
        } else {
          ce.eu = map_b[eb.eu];
          ce.ev = map_b[eb.ev];
        }
        break;
      case Kind::VertexSet:
        for (int i = 0; i < a.v; ++i) {
          if ((ea.vset >> i) & 1u) ce.vset |= static_cast<uint16_t>(1u << i);
        }
        for (int i = 0; i < b.v; ++i) {
          if ((eb.vset >> i) & 1u) ce.vset |= static_cast<uint16_t>(1u << map_b[i]);
        }
        break;
      default:
        throw InternalError("oracle: eset gluing is handled on the slow path");
    }
    out.elems.push_back(ce);
  }
  return out;
}

// real-structure gluing for edge-set signatures and properties without
// a compact evaluator: plain disjoint union with identification
Structure oglue_full(const OStruct& a, const OStruct& b) {
  BoundariedStructure sa = to_structure(a);
  BoundariedStructure sb = to_structure(b);
  // shift b's ids, merge label mates
  std::map<Vertex, Vertex> mb;
  int next = a.v;
  for (int i = 0; i < b.v; ++i) {
    mb[i] = -1;
    if (b.label[i] > 0) {
      for (int j = 0; j < a.v; ++j) {
        if (a.label[j] == b.label[i]) mb[i] = j;
      }
    }
    if (mb[i] < 0) mb[i] = next++;
  }
  VertexSet vs;
  for (int i = 0; i < next; ++i) vs.insert(i);
  std::vector<Edge> edges = sa.graph().edges();
  int base = static_cast<int>(edges.size());
  for (const Edge& e : sb.graph().edges()) {
    edges.push_back(Edge{mb.at(e.u), mb.at(e.v)});
  }
  Structure out;
  out.graph = Graph(vs, edges);
  for (size_t s = 0; s < sa.elements.size(); ++s) {
    const Element& ea = sa.elements[s];
    const Element& eb = sb.elements[s];
    if (ea.kind == Kind::Star) {
      if (eb.kind == Kind::Vertex) {
        out.elements.push_back(Element::of_vertex(mb.at(eb.vertex)));
      } else {
        out.elements.push_back(Element::of_edge(base + eb.edge));
      }
    } else if (eb.kind == Kind::Star) {
      out.elements.push_back(ea);
    } else if (ea.kind == Kind::Vertex) {
      out.elements.push_back(ea);
    } else if (ea.kind == Kind::Edge) {
      out.elements.push_back(ea);
    } else if (ea.kind == Kind::VertexSet) {
      VertexSet set = ea.vset;
      for (Vertex v : eb.vset) set.insert(mb.at(v));
      out.elements.push_back(Element::of_vertex_set(set));
    } else {
      std::set<int> set = ea.eset;
      for (int e : eb.eset) set.insert(base + e);
      out.elements.push_back(Element::of_edge_set(set));
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<BoundariedStructure>> oracle_equivalence(
    const Property& prop, int label_budget, int universe_bound,
    int context_bound) {
  if (label_budget < 0 || label_budget > 4 || universe_bound > 6 ||
      context_bound > 6) {
    throw BudgetError("oracle_equivalence: bounds above budget");
  }
  int bound = std::max(universe_bound, context_bound);
  bool has_eset = false;
  for (Kind k : prop.element_kinds) has_eset |= (k == Kind::EdgeSet);
  bool fast = static_cast<bool>(prop.evaluate_compact) && !has_eset;

  // raw enumeration with min-image dedup over all permutations
  std::vector<OStruct> all;
  for (int v = 0; v <= bound; ++v) {
    std::vector<std::vector<int>> perms;
    {
      std::vector<int> p(v);
      for (int i = 0; i < v; ++i) p[i] = i;
      do {
        perms.push_back(p);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    int pairs = v * (v - 1) / 2;
    std::vector<int> pair_bits;
    for (int i = 0; i < v; ++i) {
      for (int j = i + 1; j < v; ++j) pair_bits.push_back(obit(i, j));
    }
    for (uint32_t code = 0; code < (1u << pairs); ++code) {
      OStruct base;
      base.v = v;
      for (int t = 0; t < pairs; ++t) {
        if ((code >> t) & 1u) base.adj |= 1u << pair_bits[t];
      }
      // labelings: every function V -> {0..budget} injective on nonzero
      std::vector<int> stack(v, 0);
      while (true) {
        bool injective = true;
        uint32_t used = 0;
        for (int i = 0; i < v && injective; ++i) {
          if (stack[i] > 0) {
            if ((used >> stack[i]) & 1u) injective = false;
            used |= 1u << stack[i];
          }
        }
        if (injective) {
          OStruct labeled = base;
          for (int i = 0; i < v; ++i) labeled.label[i] = static_cast<int8_t>(stack[i]);
          // element tuples
          std::vector<OStruct::OElem> slots(prop.element_kinds.size());
          std::function<void(size_t)> rec = [&](size_t slot) {
            if (slot == slots.size()) {
              OStruct full = labeled;
              full.elems = slots;
              auto key = full.key();
              bool minimal = true;
              for (const auto& perm : perms) {
                if (opermute(full, perm).key() < key) {
                  minimal = false;
                  break;
                }
              }
              if (minimal) all.push_back(full);
              return;
            }
            OStruct::OElem& el = slots[slot];
            el = OStruct::OElem{};
            el.kind = prop.element_kinds[slot];
            switch (el.kind) {
              case Kind::Vertex:
                el.vertex = -1;
                rec(slot + 1);
                for (int i = 0; i < v; ++i) {
                  el.vertex = i;
                  rec(slot + 1);
                }
                break;
              case Kind::Edge:
                el.eu = el.ev = -1;
                rec(slot + 1);
                for (int i = 0; i < v; ++i) {
                  for (int j = i + 1; j < v; ++j) {
                    if ((labeled.adj >> obit(i, j)) & 1u) {
                      el.eu = i;
                      el.ev = j;
                      rec(slot + 1);
                    }
                  }
                }
                break;
              case Kind::VertexSet:
                for (uint32_t m = 0; m < (1u << v); ++m) {
                  el.vset = m;
                  rec(slot + 1);
                }
                break;
              case Kind::EdgeSet: {
                uint32_t sub = labeled.adj;
                while (true) {
                  el.eset = sub;
                  rec(slot + 1);
                  if (sub == 0) break;
                  sub = (sub - 1) & labeled.adj;
                }
                break;
              }
              default:
                throw Error("oracle_equivalence: bad signature kind");
            }
          };
          rec(0);
        }
        // next labeling
        int i = v - 1;
        while (i >= 0 && stack[i] == label_budget) {
          stack[i] = 0;
          --i;
        }
        if (i < 0) break;
        ++stack[i];
      }
    }
  }

  // partition
  std::vector<OSig> sigs(all.size());
  std::vector<int> vcount(all.size());
  for (size_t i = 0; i < all.size(); ++i) {
    sigs[i] = osig(all[i]);
    vcount[i] = all[i].v;
  }
  std::map<OSig, std::vector<int>> blocks;
  for (size_t i = 0; i < all.size(); ++i) {
    if (vcount[i] <= universe_bound) blocks[sigs[i]].push_back(static_cast<int>(i));
  }
  std::vector<std::vector<BoundariedStructure>> classes;
  for (auto& [sig, members] : blocks) {
    std::vector<int> ctx;
    for (size_t j = 0; j < all.size(); ++j) {
      if (vcount[j] <= context_bound && ocompatible(sig, sigs[j])) {
        ctx.push_back(static_cast<int>(j));
      }
    }
    std::map<std::vector<uint8_t>, std::vector<int>> by_row;
    for (int i : members) {
      std::vector<uint8_t> row(ctx.size());
      for (size_t j = 0; j < ctx.size(); ++j) {
        bool value = fast ? prop.evaluate_compact(oglue(all[i], all[ctx[j]]))
                          : prop.evaluate(oglue_full(all[i], all[ctx[j]]));
        row[j] = value ? 1 : 0;
      }
      by_row[row].push_back(i);
    }
    for (auto& [row, idxs] : by_row) {
      std::vector<BoundariedStructure> cls;
      for (int i : idxs) cls.push_back(to_structure(all[i]));
      classes.push_back(std::move(cls));
    }
  }
  return classes;
}

}  // namespace unbreak

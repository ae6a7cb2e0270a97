#include "unbreak/finite_state.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "unbreak/breakability.hpp"

namespace unbreak {

bool Property::matches(const Structure& s) const {
  if (s.arity() < arity()) return false;
  for (size_t i = 0; i < element_kinds.size(); ++i) {
    if (s.elements[i].kind != element_kinds[i]) return false;
  }
  return true;
}

const Property* find_property(const std::string& name) {
  for (const Property& p : shipped_properties()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

CompatKey compat_key(const BoundariedStructure& s) {
  CompatKey key;
  key.labels = s.bgraph.label_set();
  for (const Element& el : s.elements) {
    ElemSpec spec{ElemSpec::Star, 0, 0};
    switch (el.kind) {
      case Kind::Star:
        spec.tag = ElemSpec::Star;
        break;
      case Kind::Vertex: {
        auto l = s.bgraph.label_of(el.vertex);
        if (l) {
          spec = {ElemSpec::BoundaryVertex, *l, 0};
        } else {
          spec.tag = ElemSpec::FreeVertex;
        }
        break;
      }
      case Kind::Edge: {
        const Edge& e = s.graph().edge(el.edge);
        auto lu = s.bgraph.label_of(e.u);
        auto lv = s.bgraph.label_of(e.v);
        if (lu && lv) {
          auto [lo, hi] = std::minmax(*lu, *lv);
          spec = {ElemSpec::BoundaryEdge, lo, hi};
        } else {
          spec.tag = ElemSpec::FreeEdge;
        }
        break;
      }
      case Kind::VertexSet:
        spec = {ElemSpec::Set, 0, 0};
        break;
      case Kind::EdgeSet:
        spec = {ElemSpec::Set, 1, 0};
        break;
      default:
        throw Error("compat_key: bad element kind");
    }
    key.specs.push_back(spec);
  }
  return key;
}

namespace {

bool specs_compatible(const ElemSpec& a, const ElemSpec& b) {
  if (a.tag == ElemSpec::Set || b.tag == ElemSpec::Set) {
    return a.tag == b.tag && a.a == b.a;
  }
  if (a.tag == ElemSpec::Star) return b.tag != ElemSpec::Star;
  if (b.tag == ElemSpec::Star) return true;
  return a == b &&
         (a.tag == ElemSpec::BoundaryVertex || a.tag == ElemSpec::BoundaryEdge);
}

bool keys_compatible(const CompatKey& a, const CompatKey& b) {
  if (a.specs.size() != b.specs.size()) return false;
  for (size_t i = 0; i < a.specs.size(); ++i) {
    if (!specs_compatible(a.specs[i], b.specs[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Universe enumeration: simple graphs on at most `bound` vertices with
// injective labels in [budget], elements following the signature, each
// isomorphism class generated exactly once (adjacency canonical over
// all permutations, then labels canonical over graph automorphisms,
// then elements canonical over label-preserving automorphisms).

struct RawElem {
  Kind kind = Kind::Star;
  int vertex = -1;       // Kind::Vertex
  int eu = -1, ev = -1;  // Kind::Edge
  uint32_t vset = 0;     // Kind::VertexSet
  uint32_t eset = 0;     // Kind::EdgeSet, bits over pair ids

  auto key() const { return std::tuple(vertex, eu, ev, vset, eset); }
  bool operator==(const RawElem& o) const { return key() == o.key(); }
  bool operator<(const RawElem& o) const { return key() < o.key(); }
};

struct RawMember {
  int v = 0;
  uint32_t adj = 0;  // bits over pair ids
  std::array<int8_t, 6> label{};
  std::vector<RawElem> elems;
};

int pair_id(int v, int i, int j) {
  if (i > j) std::swap(i, j);
  return i * v - i * (i + 1) / 2 + (j - i - 1);
}

uint32_t permute_adj(int v, uint32_t adj, const std::vector<int>& perm) {
  uint32_t out = 0;
  for (int i = 0; i < v; ++i) {
    for (int j = i + 1; j < v; ++j) {
      if ((adj >> pair_id(v, i, j)) & 1u) {
        out |= 1u << pair_id(v, perm[i], perm[j]);
      }
    }
  }
  return out;
}

std::array<int8_t, 6> permute_labels(int v, const std::array<int8_t, 6>& lab,
                                     const std::vector<int>& perm) {
  std::array<int8_t, 6> out{};
  for (int i = 0; i < v; ++i) out[perm[i]] = lab[i];
  return out;
}

RawElem permute_elem(int v, const RawElem& el, const std::vector<int>& perm) {
  RawElem out = el;
  if (el.kind == Kind::Vertex && el.vertex >= 0) out.vertex = perm[el.vertex];
  if (el.kind == Kind::Edge && el.eu >= 0) {
    int a = perm[el.eu], b = perm[el.ev];
    out.eu = std::min(a, b);
    out.ev = std::max(a, b);
  }
  if (el.kind == Kind::VertexSet) {
    out.vset = 0;
    for (int i = 0; i < v; ++i) {
      if ((el.vset >> i) & 1u) out.vset |= 1u << perm[i];
    }
  }
  if (el.kind == Kind::EdgeSet) {
    out.eset = 0;
    for (int i = 0; i < v; ++i) {
      for (int j = i + 1; j < v; ++j) {
        if ((el.eset >> pair_id(v, i, j)) & 1u) {
          out.eset |= 1u << pair_id(v, perm[i], perm[j]);
        }
      }
    }
  }
  return out;
}

std::vector<RawElem> permute_elems(int v, const std::vector<RawElem>& els,
                                   const std::vector<int>& perm) {
  std::vector<RawElem> out;
  out.reserve(els.size());
  for (const RawElem& el : els) out.push_back(permute_elem(v, el, perm));
  return out;
}

// All injective partial labelings of v vertices with labels in [budget].
void enumerate_labelings(int v, int budget,
                         const std::function<void(const std::array<int8_t, 6>&)>& emit) {
  std::array<int8_t, 6> lab{};
  uint32_t used = 0;
  std::function<void(int)> rec = [&](int i) {
    if (i == v) {
      emit(lab);
      return;
    }
    lab[i] = 0;
    rec(i + 1);
    for (int l = 1; l <= budget; ++l) {
      if ((used >> l) & 1u) continue;
      lab[i] = static_cast<int8_t>(l);
      used |= 1u << l;
      rec(i + 1);
      used &= ~(1u << l);
      lab[i] = 0;
    }
  };
  if (v == 0) {
    emit(lab);
    return;
  }
  rec(0);
}

void enumerate_element_tuples(int v, uint32_t adj,
                              const std::vector<Kind>& kinds,
                              const std::function<void(const std::vector<RawElem>&)>& emit) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < v; ++i) {
    for (int j = i + 1; j < v; ++j) {
      if ((adj >> pair_id(v, i, j)) & 1u) edges.push_back({i, j});
    }
  }
  std::vector<RawElem> cur(kinds.size());
  std::function<void(size_t)> rec = [&](size_t slot) {
    if (slot == kinds.size()) {
      emit(cur);
      return;
    }
    RawElem& el = cur[slot];
    el = RawElem{};
    el.kind = kinds[slot];
    switch (kinds[slot]) {
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
        for (auto [i, j] : edges) {
          el.eu = i;
          el.ev = j;
          rec(slot + 1);
        }
        break;
      case Kind::VertexSet:
        for (uint32_t m = 0; m < (1u << v); ++m) {
          el.vset = m;
          rec(slot + 1);
        }
        break;
      case Kind::EdgeSet: {
        uint32_t full = 0;
        for (auto [i, j] : edges) full |= 1u << pair_id(v, i, j);
        uint32_t sub = full;
        while (true) {
          el.eset = sub;
          rec(slot + 1);
          if (sub == 0) break;
          sub = (sub - 1) & full;
        }
        break;
      }
      default:
        throw Error("signature may not contain graph/star kinds");
    }
  };
  rec(0);
}

std::vector<std::vector<int>> all_permutations(int v) {
  std::vector<int> p(v);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

BoundariedStructure member_to_structure(const RawMember& m) {
  VertexSet vs;
  for (int i = 0; i < m.v; ++i) vs.insert(i);
  std::vector<Edge> edges;
  std::map<int, int> edge_index;  // pair id -> edge index
  for (int i = 0; i < m.v; ++i) {
    for (int j = i + 1; j < m.v; ++j) {
      if ((m.adj >> pair_id(m.v, i, j)) & 1u) {
        edge_index[pair_id(m.v, i, j)] = static_cast<int>(edges.size());
        edges.push_back(Edge{i, j});
      }
    }
  }
  std::map<Vertex, int> labels;
  for (int i = 0; i < m.v; ++i) {
    if (m.label[i] > 0) labels[i] = m.label[i];
  }
  BoundariedStructure out;
  out.bgraph = BoundariedGraph(Graph(vs, edges), labels);
  for (const RawElem& el : m.elems) {
    switch (el.kind) {
      case Kind::Vertex:
        out.elements.push_back(el.vertex < 0 ? Element::star()
                                             : Element::of_vertex(el.vertex));
        break;
      case Kind::Edge:
        out.elements.push_back(
            el.eu < 0 ? Element::star()
                      : Element::of_edge(edge_index.at(pair_id(m.v, el.eu, el.ev))));
        break;
      case Kind::VertexSet: {
        VertexSet s;
        for (int i = 0; i < m.v; ++i) {
          if ((el.vset >> i) & 1u) s.insert(i);
        }
        out.elements.push_back(Element::of_vertex_set(std::move(s)));
        break;
      }
      case Kind::EdgeSet: {
        std::set<int> s;
        for (auto& [pid, idx] : edge_index) {
          if ((el.eset >> pid) & 1u) s.insert(idx);
        }
        out.elements.push_back(Element::of_edge_set(std::move(s)));
        break;
      }
      default:
        throw InternalError("bad raw element kind");
    }
  }
  return out;
}

std::vector<BoundariedStructure> enumerate_universe(const std::vector<Kind>& kinds,
                                                    int label_budget, int bound) {
  std::vector<BoundariedStructure> out;
  for (int v = 0; v <= bound; ++v) {
    auto perms = all_permutations(v);
    int pairs = v * (v - 1) / 2;
    for (uint32_t adj = 0; adj < (1u << pairs); ++adj) {
      std::vector<const std::vector<int>*> aut;
      bool canonical = true;
      for (const auto& perm : perms) {
        uint32_t img = permute_adj(v, adj, perm);
        if (img < adj) {
          canonical = false;
          break;
        }
        if (img == adj) aut.push_back(&perm);
      }
      if (!canonical) continue;
      enumerate_labelings(v, label_budget, [&](const std::array<int8_t, 6>& lab) {
        std::vector<const std::vector<int>*> stab;
        for (const auto* perm : aut) {
          auto img = permute_labels(v, lab, *perm);
          if (img < lab) return;  // not canonical
          if (img == lab) stab.push_back(perm);
        }
        enumerate_element_tuples(v, adj, kinds, [&](const std::vector<RawElem>& els) {
          for (const auto* perm : stab) {
            if (permute_elems(v, els, *perm) < els) return;
          }
          RawMember m;
          m.v = v;
          m.adj = adj;
          m.label = lab;
          m.elems = els;
          out.push_back(member_to_structure(m));
        });
      });
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fast gluing over compact forms.

struct CompactBS {
  int n = 0;
  std::array<uint16_t, 16> adj{};
  std::array<int8_t, 16> label{};
  std::vector<CompactStructure::Elem> elems;
  bool usable = false;  // false when the structure has edge-set slots
};

CompactBS compact_of_bs(const BoundariedStructure& s) {
  CompactBS out;
  const Graph& g = s.graph();
  if (g.num_vertices() > 16) return out;
  out.n = g.num_vertices();
  std::map<Vertex, int> idx;
  int next = 0;
  for (Vertex v : g.vertices()) idx[v] = next++;
  for (const Edge& e : g.edges()) {
    if (e.u == e.v) continue;
    int a = idx[e.u], b = idx[e.v];
    out.adj[a] |= static_cast<uint16_t>(1u << b);
    out.adj[b] |= static_cast<uint16_t>(1u << a);
  }
  for (const auto& [v, l] : s.bgraph.labels()) {
    if (l > 127) return out;
    out.label[idx[v]] = static_cast<int8_t>(l);
  }
  for (const Element& el : s.elements) {
    CompactStructure::Elem ce;
    ce.kind = el.kind;
    switch (el.kind) {
      case Kind::Star:
        break;
      case Kind::Vertex:
        ce.kind = Kind::Vertex;
        ce.vertex = idx[el.vertex];
        break;
      case Kind::Edge: {
        const Edge& e = g.edge(el.edge);
        ce.eu = idx[e.u];
        ce.ev = idx[e.v];
        break;
      }
      case Kind::VertexSet:
        for (Vertex v : el.vset) ce.vset |= static_cast<uint16_t>(1u << idx[v]);
        break;
      default:
        return out;  // edge sets take the generic path
    }
    out.elems.push_back(ce);
  }
  out.usable = true;
  return out;
}

// Star slots must be resolved by the partner; callers glue compatible
// pairs only.
bool glue_compact(const CompactBS& a, const CompactBS& b, CompactStructure* out) {
  if (!a.usable || !b.usable) return false;
  int map_b[16];
  int n = a.n;
  for (int i = 0; i < b.n; ++i) {
    map_b[i] = -1;
    if (b.label[i] > 0) {
      for (int j = 0; j < a.n; ++j) {
        if (a.label[j] == b.label[i]) {
          map_b[i] = j;
          break;
        }
      }
    }
    if (map_b[i] < 0) map_b[i] = n++;
  }
  if (n > 16) return false;
  out->n = n;
  out->adj.fill(0);
  for (int i = 0; i < a.n; ++i) out->adj[i] = a.adj[i];
  for (int i = 0; i < b.n; ++i) {
    for (uint32_t m = b.adj[i]; m; m &= m - 1) {
      int j = std::countr_zero(m);
      out->adj[map_b[i]] |= static_cast<uint16_t>(1u << map_b[j]);
    }
  }
  out->elems.clear();
  for (size_t s = 0; s < a.elems.size(); ++s) {
    const auto& ea = a.elems[s];
    const auto& eb = b.elems[s];
    CompactStructure::Elem ce;
    switch (ea.kind == Kind::Star ? eb.kind : ea.kind) {
      case Kind::Vertex:
        ce.kind = Kind::Vertex;
        ce.vertex = (ea.kind != Kind::Star && ea.vertex >= 0)
                        ? ea.vertex
                        : map_b[eb.vertex];
        break;
      case Kind::Edge:
        ce.kind = Kind::Edge;
        if (ea.kind != Kind::Star && ea.eu >= 0) {
          ce.eu = ea.eu;
          ce.ev = ea.ev;
        } else {
          ce.eu = map_b[eb.eu];
          ce.ev = map_b[eb.ev];
        }
        break;
      case Kind::VertexSet: {
        ce.kind = Kind::VertexSet;
        ce.vset = ea.vset;
        for (uint32_t m = eb.vset; m; m &= m - 1) {
          ce.vset |= static_cast<uint16_t>(1u << map_b[std::countr_zero(m)]);
        }
        break;
      }
      default:
        return false;
    }
    out->elems.push_back(ce);
  }
  return true;
}

}  // namespace

CompactStructure compact_of_structure(const Structure& s) {
  BoundariedStructure b;
  b.bgraph = BoundariedGraph(s.graph, {});
  b.elements = s.elements;
  CompactBS c = compact_of_bs(b);
  if (!c.usable) throw Error("compact_of_structure: unsupported structure");
  CompactStructure out;
  out.n = c.n;
  out.adj = c.adj;
  out.elems = c.elems;
  return out;
}

// ---------------------------------------------------------------------------
// Class computation.

ClassComputation compute_classes_detailed(const Property& prop, int label_budget,
                                          int universe_bound, int context_bound) {
  if (label_budget < 0 || label_budget > 4) {
    throw BudgetError("compute_classes: label budget above 4");
  }
  if (universe_bound < 0 || universe_bound > 6 || context_bound < 0 ||
      context_bound > 6) {
    throw BudgetError("compute_classes: universe/context bound above 6");
  }
  ClassComputation cc;
  int bound = std::max(universe_bound, context_bound);
  cc.universe = enumerate_universe(prop.element_kinds, label_budget, bound);

  size_t m = cc.universe.size();
  std::vector<CompatKey> keys(m);
  std::vector<CompactBS> compact(m);
  std::vector<int> vcount(m);
  bool fast = static_cast<bool>(prop.evaluate_compact);
  for (size_t i = 0; i < m; ++i) {
    keys[i] = compat_key(cc.universe[i]);
    vcount[i] = cc.universe[i].graph().num_vertices();
    if (fast) {
      compact[i] = compact_of_bs(cc.universe[i]);
      fast = fast && compact[i].usable;
    }
  }

  // members live in the universe slice, contexts in the context slice
  std::vector<int> members, contexts;
  for (size_t i = 0; i < m; ++i) {
    if (vcount[i] <= universe_bound) members.push_back(static_cast<int>(i));
    if (vcount[i] <= context_bound) contexts.push_back(static_cast<int>(i));
  }

  // group members by compatibility key
  std::map<CompatKey, std::vector<int>> blocks;
  for (int i : members) blocks[keys[i]].push_back(i);

  // context lists depend only on the spec vector
  std::map<std::vector<ElemSpec>, std::vector<int>> ctx_by_spec;

  cc.class_of.assign(m, -1);
  cc.rows.assign(m, {});
  std::vector<std::vector<int>> class_members;

  auto eval_pair = [&](int i, int j) -> bool {
    if (fast) {
      CompactStructure glued;
      if (glue_compact(compact[i], compact[j], &glued)) {
        return prop.evaluate_compact(glued);
      }
    }
    return prop.evaluate(glue_structures(cc.universe[i], cc.universe[j]));
  };

  for (auto& [key, block] : blocks) {
    auto it = ctx_by_spec.find(key.specs);
    if (it == ctx_by_spec.end()) {
      std::vector<int> list;
      for (int j : contexts) {
        if (keys_compatible(key, keys[j])) list.push_back(j);
      }
      it = ctx_by_spec.emplace(key.specs, std::move(list)).first;
    }
    const std::vector<int>& ctx = it->second;
    std::map<std::vector<uint8_t>, int> row_class;
    for (int i : block) {
      std::vector<uint8_t> row(ctx.size());
      for (size_t j = 0; j < ctx.size(); ++j) {
        row[j] = eval_pair(i, ctx[j]) ? 1 : 0;
      }
      auto rit = row_class.find(row);
      if (rit == row_class.end()) {
        rit = row_class.emplace(row, static_cast<int>(class_members.size())).first;
        class_members.push_back({});
      }
      cc.class_of[i] = rit->second;
      class_members[rit->second].push_back(i);
      cc.rows[i] = std::move(row);
    }
  }

  // shortest-encoding representative per class, ties lexicographic
  RepresentativeTable& table = cc.table;
  table.property = prop.name;
  table.label_budget = label_budget;
  table.arity = prop.arity();
  table.element_kinds = prop.element_kinds;
  table.universe_bound = universe_bound;
  table.context_bound = context_bound;
  for (const auto& cls : class_members) {
    std::string best_code;
    int best = -1;
    for (int i : cls) {
      std::string code = canonical_code(cc.universe[i]);
      if (best < 0 || code.size() < best_code.size() ||
          (code.size() == best_code.size() && code < best_code)) {
        best = i;
        best_code = std::move(code);
      }
    }
    cc.rep_member.push_back(best);
    table.reps.push_back(cc.universe[best]);
    table.rep_codes.push_back(best_code);
    table.max_code_length = std::max(table.max_code_length,
                                     static_cast<int>(best_code.size()));
    table.max_rep_vertices =
        std::max(table.max_rep_vertices, cc.universe[best].graph().num_vertices());
  }

  size_t zeta = table.reps.size();
  table.answers.assign(zeta, std::vector<int8_t>(zeta, -1));
  for (size_t i = 0; i < zeta; ++i) {
    for (size_t j = 0; j < zeta; ++j) {
      if (compatible(table.reps[i], table.reps[j])) {
        table.answers[i][j] =
            prop.evaluate(glue_structures(table.reps[i], table.reps[j])) ? 1 : 0;
      }
    }
  }

  // stash block context lists for cross-validation
  cc.compat_contexts.resize(m);
  for (auto& [key, block] : blocks) {
    const std::vector<int>& ctx = ctx_by_spec[key.specs];
    for (int i : block) cc.compat_contexts[i] = ctx;
  }
  return cc;
}

RepresentativeTable compute_classes(const Property& prop, int label_budget,
                                    int universe_bound, int context_bound) {
  return compute_classes_detailed(prop, label_budget, universe_bound,
                                  context_bound)
      .table;
}

UnbreakableSolver direct_solver(const Property& prop) {
  return [&prop](const Structure& s) { return prop.evaluate(s); };
}

// ---------------------------------------------------------------------------
// Understand.

BoundariedStructure understand_unbreakable(const BoundariedStructure& a,
                                           const RepresentativeTable& table,
                                           const UnbreakableSolver& solver) {
  CompatKey ka = compat_key(a);
  std::vector<int> test_set, candidates;
  for (size_t j = 0; j < table.reps.size(); ++j) {
    if (compatible(a, table.reps[j])) test_set.push_back(static_cast<int>(j));
    if (compat_key(table.reps[j]) == ka) candidates.push_back(static_cast<int>(j));
  }
  if (candidates.empty()) {
    throw InternalError(
        "understand_unbreakable: no representative of the input's "
        "compatibility type (table/solver inconsistency)");
  }
  std::vector<int8_t> ans_a(test_set.size());
  for (size_t t = 0; t < test_set.size(); ++t) {
    ans_a[t] = solver(glue_structures(a, table.reps[test_set[t]])) ? 1 : 0;
  }
  int match = -1;
  for (int b : candidates) {
    bool ok = true;
    for (size_t t = 0; t < test_set.size(); ++t) {
      int8_t ans_b =
          solver(glue_structures(table.reps[b], table.reps[test_set[t]])) ? 1 : 0;
      if (ans_b != ans_a[t]) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    if (match >= 0) {
      throw InternalError(
          "understand_unbreakable: two representatives match the answer "
          "vector (table/solver inconsistency)");
    }
    match = b;
  }
  if (match < 0) {
    throw InternalError(
        "understand_unbreakable: no representative matches the answer "
        "vector (table/solver inconsistency)");
  }
  return table.reps[match];
}

namespace {

// Boundary labeling of the split part: X-side boundary keeps its
// labels; separator vertices outside the boundary get the smallest
// unused labels, ascending by vertex id.
std::map<Vertex, int> split_labels(const BoundariedStructure& a,
                                   const Separation& sep, int label_budget) {
  VertexSet delta_a = a.bgraph.boundary();
  VertexSet x_bound = set_intersection(sep.x_side, delta_a);
  std::map<Vertex, int> lam;
  std::set<int> used;
  for (Vertex v : x_bound) {
    int l = *a.bgraph.label_of(v);
    lam[v] = l;
    used.insert(l);
  }
  VertexSet fresh_vertices =
      set_difference(set_intersection(sep.x_side, sep.y_side), delta_a);
  int next = 1;
  for (Vertex v : fresh_vertices) {
    while (used.count(next)) ++next;
    if (next > label_budget) {
      throw InternalError("split_beta: label budget exhausted");
    }
    lam[v] = next;
    used.insert(next);
  }
  return lam;
}

}  // namespace

BoundariedStructure split_beta(const BoundariedStructure& a,
                               const Separation& sep, int label_budget) {
  const Graph& g = a.graph();
  if (!is_separation(g, sep.x_side, sep.y_side)) {
    throw Error("split_beta: not a separation of the input graph");
  }
  VertexSet delta_a = a.bgraph.boundary();
  if (set_intersection(sep.x_side, delta_a).size() >
      set_intersection(sep.y_side, delta_a).size()) {
    throw Error("split_beta: requires |X ∩ δ| <= |Y ∩ δ|");
  }
  std::map<Vertex, int> lam = split_labels(a, sep, label_budget);
  std::vector<int> edge_map;
  Graph gb = induced_subgraph(g, sep.x_side, &edge_map);
  BoundariedStructure out;
  out.bgraph = BoundariedGraph(gb, lam);
  for (const Element& el : a.elements) {
    switch (el.kind) {
      case Kind::Star:
        out.elements.push_back(Element::star());
        break;
      case Kind::Vertex:
        out.elements.push_back(sep.x_side.count(el.vertex)
                                   ? Element::of_vertex(el.vertex)
                                   : Element::star());
        break;
      case Kind::Edge:
        out.elements.push_back(edge_map[el.edge] >= 0
                                   ? Element::of_edge(edge_map[el.edge])
                                   : Element::star());
        break;
      case Kind::VertexSet:
        out.elements.push_back(
            Element::of_vertex_set(set_intersection(el.vset, sep.x_side)));
        break;
      case Kind::EdgeSet: {
        std::set<int> s;
        for (int e : el.eset) {
          if (edge_map[e] >= 0) s.insert(edge_map[e]);
        }
        out.elements.push_back(Element::of_edge_set(std::move(s)));
        break;
      }
      default:
        throw Error("split_beta: bad element kind");
    }
  }
  return out;
}

BoundariedStructure rejoin_gamma(const BoundariedStructure& a,
                                 const BoundariedStructure& beta_rep,
                                 const Separation& sep, int label_budget) {
  const Graph& g = a.graph();
  std::map<Vertex, int> lam_beta = split_labels(a, sep, label_budget);
  std::set<int> beta_labels;
  for (auto& [v, l] : lam_beta) beta_labels.insert(l);
  if (beta_rep.bgraph.label_set() != beta_labels) {
    throw InternalError("rejoin_gamma: replacement label set mismatch");
  }
  VertexSet delta_a = a.bgraph.boundary();
  VertexSet separator = set_intersection(sep.x_side, sep.y_side);
  std::set<int> delta_fresh_labels;  // labels minted for X∩Y \ δ(a)
  for (Vertex v : set_difference(separator, delta_a)) {
    delta_fresh_labels.insert(lam_beta.at(v));
  }

  std::vector<int> y_edge_map;
  Graph gy = induced_subgraph(g, sep.y_side, &y_edge_map);
  int y_edge_count = gy.num_edges();

  // identify separator vertices with the replacement's label mates
  std::map<Vertex, Vertex> rep_map;  // beta_rep vertex -> gamma vertex
  for (Vertex v : separator) {
    int l = lam_beta.at(v);
    auto u = beta_rep.bgraph.vertex_with_label(l);
    if (!u) throw InternalError("rejoin_gamma: replacement misses a separator label");
    rep_map[*u] = v;
  }
  Vertex next = g.vertices().empty() ? 0 : g.vertices().back() + 1;
  for (Vertex u : beta_rep.graph().vertices()) {
    if (!rep_map.count(u)) rep_map[u] = next++;
  }

  VertexSet verts = sep.y_side;
  for (auto& [u, v] : rep_map) verts.insert(v);
  std::vector<Edge> edges = gy.edges();
  for (const Edge& e : beta_rep.graph().edges()) {
    edges.push_back(Edge{rep_map.at(e.u), rep_map.at(e.v)});
  }
  Graph gg(verts, edges);

  std::map<Vertex, int> lam_gamma;
  for (Vertex v : set_intersection(sep.y_side, delta_a)) {
    lam_gamma[v] = *a.bgraph.label_of(v);
  }
  for (const auto& [u, l] : beta_rep.bgraph.labels()) {
    if (delta_fresh_labels.count(l)) continue;
    Vertex gv = rep_map.at(u);
    auto it = lam_gamma.find(gv);
    if (it != lam_gamma.end()) {
      if (it->second != l) throw InternalError("rejoin_gamma: label clash");
    } else {
      lam_gamma[gv] = l;
    }
  }

  BoundariedStructure out;
  out.bgraph = BoundariedGraph(gg, lam_gamma);
  for (size_t i = 0; i < a.elements.size(); ++i) {
    const Element& el = a.elements[i];
    const Element* rep_el =
        i < beta_rep.elements.size() ? &beta_rep.elements[i] : nullptr;
    switch (el.kind) {
      case Kind::Star:
        out.elements.push_back(Element::star());
        break;
      case Kind::Vertex: {
        if (sep.y_side.count(el.vertex)) {
          out.elements.push_back(Element::of_vertex(el.vertex));
          break;
        }
        if (!rep_el || rep_el->kind != Kind::Vertex) {
          throw InternalError("rejoin_gamma: replacement misses a vertex slot");
        }
        out.elements.push_back(Element::of_vertex(rep_map.at(rep_el->vertex)));
        break;
      }
      case Kind::Edge: {
        if (y_edge_map[el.edge] >= 0) {
          out.elements.push_back(Element::of_edge(y_edge_map[el.edge]));
          break;
        }
        if (!rep_el || rep_el->kind != Kind::Edge) {
          throw InternalError("rejoin_gamma: replacement misses an edge slot");
        }
        out.elements.push_back(Element::of_edge(y_edge_count + rep_el->edge));
        break;
      }
      case Kind::VertexSet: {
        VertexSet s = set_intersection(el.vset, sep.y_side);
        if (!rep_el || rep_el->kind != Kind::VertexSet) {
          throw InternalError("rejoin_gamma: replacement misses a set slot");
        }
        for (Vertex u : rep_el->vset) s.insert(rep_map.at(u));
        out.elements.push_back(Element::of_vertex_set(std::move(s)));
        break;
      }
      case Kind::EdgeSet: {
        std::set<int> s;
        for (int e : el.eset) {
          if (y_edge_map[e] >= 0) s.insert(y_edge_map[e]);
        }
        if (!rep_el || rep_el->kind != Kind::EdgeSet) {
          throw InternalError("rejoin_gamma: replacement misses a set slot");
        }
        for (int e : rep_el->eset) s.insert(y_edge_count + e);
        out.elements.push_back(Element::of_edge_set(std::move(s)));
        break;
      }
      default:
        throw Error("rejoin_gamma: bad element kind");
    }
  }
  return out;
}

BoundariedStructure understand(const BoundariedStructure& a,
                               const RepresentativeTable& table,
                               const UnbreakableSolver& solver, int s, int c,
                               UnderstandStats* stats) {
  if (c < 0 || table.label_budget != 2 * c) {
    throw Error("understand: table label budget must equal 2c");
  }
  if (a.arity() != table.arity) {
    throw Error("understand: arity does not match the table");
  }
  for (const auto& [v, l] : a.bgraph.labels()) {
    if (l > table.label_budget) {
      throw Error("understand: input labels exceed the label budget");
    }
  }
  int r = table.max_code_length;
  if (s <= r) throw Error("understand: need s > r");

  int n = a.graph().num_vertices();
  if (n >= 2 * (s - r)) {
    BreakOutcome outcome = break_alg(a.graph(), s - r, c);
    if (!outcome.unbreakable()) {
      Separation sep = *outcome.witness;
      VertexSet delta_a = a.bgraph.boundary();
      if (set_intersection(sep.x_side, delta_a).size() >
          set_intersection(sep.y_side, delta_a).size()) {
        std::swap(sep.x_side, sep.y_side);
      }
      BoundariedStructure beta = split_beta(a, sep, table.label_budget);
      int nb = beta.graph().num_vertices();
      int threshold = witness_threshold(s - r, c);
      if (nb < threshold || nb >= n) {
        throw InternalError("understand: split size out of range");
      }
      BoundariedStructure beta_rep =
          understand(beta, table, solver, s, c, stats);
      BoundariedStructure gamma =
          rejoin_gamma(a, beta_rep, sep, table.label_budget);
      int ng = gamma.graph().num_vertices();
      if (ng > n - nb + table.max_rep_vertices) {
        throw InternalError("understand: rejoined size exceeds the bookkeeping bound");
      }
      if (stats) {
        stats->witness_steps++;
        stats->steps.push_back(
            {n, nb, ng, sep.order, threshold, table.max_rep_vertices});
      }
      if (ng < n) {
        return understand(gamma, table, solver, s, c, stats);
      }
      // replacement did not shrink the instance (representatives as large
      // as the split side); identify the class directly instead of looping
      if (stats) stats->progress_guards++;
      return understand_unbreakable(gamma, table, solver);
    }
  }
  if (stats) stats->base_cases++;
  return understand_unbreakable(a, table, solver);
}

bool solve_cmso(const Structure& s0, const RepresentativeTable& table,
                const UnbreakableSolver& solver, int s, int c,
                UnderstandStats* stats) {
  if (s0.arity() != table.arity) {
    throw Error("solve_cmso: structure arity does not match the table");
  }
  for (size_t i = 0; i < table.element_kinds.size(); ++i) {
    if (s0.elements[i].kind != table.element_kinds[i]) {
      throw Error("solve_cmso: structure kinds do not match the table");
    }
  }
  BoundariedStructure wrapped;
  wrapped.bgraph = BoundariedGraph(s0.graph, {});
  wrapped.elements = s0.elements;
  BoundariedStructure rep = understand(wrapped, table, solver, s, c, stats);

  BoundariedStructure empty_context;
  empty_context.bgraph = BoundariedGraph(Graph(), {});
  for (Kind k : table.element_kinds) {
    switch (k) {
      case Kind::Vertex:
      case Kind::Edge:
        empty_context.elements.push_back(Element::star());
        break;
      case Kind::VertexSet:
        empty_context.elements.push_back(Element::of_vertex_set({}));
        break;
      case Kind::EdgeSet:
        empty_context.elements.push_back(Element::of_edge_set({}));
        break;
      default:
        throw Error("solve_cmso: bad signature kind");
    }
  }
  return solver(glue_structures(rep, empty_context));
}

}  // namespace unbreak

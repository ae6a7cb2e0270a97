#include <bit>

#include "unbreak/finite_state.hpp"

namespace unbreak {

namespace {

bool matches_kinds(const Structure& s, const std::vector<Kind>& kinds) {
  if (s.elements.size() < kinds.size()) return false;
  for (size_t i = 0; i < kinds.size(); ++i) {
    if (s.elements[i].kind != kinds[i]) return false;
  }
  return true;
}

// Components-at-most-one convention: the empty graph counts as
// connected, which keeps gluing with the empty context well behaved.
bool graph_connected(const Graph& g) {
  return connected_components(g).size() <= 1;
}

bool compact_connected_mask(const CompactStructure& s, uint32_t mask) {
  if (mask == 0) return true;
  uint32_t seen = mask & (~mask + 1);  // lowest set bit
  while (true) {
    uint32_t grow = seen;
    for (uint32_t m = seen; m; m &= m - 1) {
      grow |= s.adj[std::countr_zero(m)];
    }
    grow &= mask;
    if (grow == seen) break;
    seen = grow;
  }
  return seen == mask;
}

uint32_t full_mask(int n) { return n == 0 ? 0 : ((1u << n) - 1); }

Property make_even_vertex_count() {
  Property p;
  p.name = "even_vertex_count";
  p.evaluate = [](const Structure& s) { return s.graph.num_vertices() % 2 == 0; };
  p.evaluate_compact = [](const CompactStructure& s) { return s.n % 2 == 0; };
  return p;
}

Property make_is_connected() {
  Property p;
  p.name = "is_connected";
  p.evaluate = [](const Structure& s) { return graph_connected(s.graph); };
  p.evaluate_compact = [](const CompactStructure& s) {
    return compact_connected_mask(s, full_mask(s.n));
  };
  return p;
}

Property make_vset_even() {
  Property p;
  p.name = "vset_even";
  p.element_kinds = {Kind::VertexSet};
  p.evaluate = [kinds = p.element_kinds](const Structure& s) {
    if (!matches_kinds(s, kinds)) return false;
    return s.elements[0].vset.size() % 2 == 0;
  };
  p.evaluate_compact = [](const CompactStructure& s) {
    return std::popcount(static_cast<uint32_t>(s.elems[0].vset)) % 2 == 0;
  };
  return p;
}

Property make_vset_spanning_connected() {
  Property p;
  p.name = "vset_spanning_connected";
  p.element_kinds = {Kind::VertexSet};
  p.evaluate = [kinds = p.element_kinds](const Structure& s) {
    if (!matches_kinds(s, kinds)) return false;
    return static_cast<int>(s.elements[0].vset.size()) == s.graph.num_vertices() &&
           graph_connected(s.graph);
  };
  p.evaluate_compact = [](const CompactStructure& s) {
    return s.elems[0].vset == full_mask(s.n) &&
           compact_connected_mask(s, full_mask(s.n));
  };
  return p;
}

Property make_constant_true() {
  Property p;
  p.name = "constant_true";
  p.evaluate = [](const Structure&) { return true; };
  p.evaluate_compact = [](const CompactStructure&) { return true; };
  return p;
}

}  // namespace

const std::vector<Property>& shipped_properties() {
  // Exactness of the bounded class computation, per property:
  //  - even_vertex_count: a class is (label set, |V| mod 2); both reach
  //    their representative within 3 vertices, and a 0/1-vertex context
  //    separates the parities.
  //  - is_connected: a class is (label set, partition of the boundary
  //    into components, whether an unlabeled component exists); all
  //    unlabeled-component classes with a nonempty boundary collapse
  //    into one always-false class. Representatives need at most one
  //    vertex per label plus one floater (5 at budget 4); star and path
  //    contexts over the labels separate partitions.
  //  - vset_even: a class is (label set, S ∩ boundary as labels,
  //    |S \ boundary| mod 2): gluing only merges equally labeled
  //    vertices, so |S_a ∪ S_b| = |S_a| + |S_b| - |overlap| and the
  //    triple determines every glued outcome. Representatives fit in
  //    |labels|+1 vertices.
  //  - vset_spanning_connected: a vertex outside S on the input side
  //    can never be covered by a context, so such classes are constant
  //    false; otherwise the class is (label set, S ∩ boundary, boundary
  //    connectivity partition, floater flag) as for is_connected.
  // All four are blind to multiplicities and self-loops, which the
  // compact evaluators rely on.
  static std::vector<Property>* props = [] {
    auto* v = new std::vector<Property>();
    v->reserve(5);
    v->push_back(make_even_vertex_count());
    v->push_back(make_is_connected());
    v->push_back(make_vset_even());
    v->push_back(make_vset_spanning_connected());
    v->push_back(make_constant_true());
    return v;
  }();
  return *props;
}

}  // namespace unbreak

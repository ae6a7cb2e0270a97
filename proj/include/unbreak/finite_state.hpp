#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "unbreak/boundaried.hpp"
#include "unbreak/graph.hpp"

namespace unbreak {

// Compact simple-graph structure used on the hot gluing paths of table
// construction. Parallel edges collapse to adjacency bits, so fast
// evaluators are only registered for multiplicity-blind properties.
struct CompactStructure {
  int n = 0;
  std::array<uint16_t, 16> adj{};  // bit j of adj[i]
  struct Elem {
    Kind kind = Kind::Star;
    int vertex = -1;    // Kind::Vertex; -1 = star
    int eu = -1, ev = -1;  // Kind::Edge endpoints; -1 = star
    uint16_t vset = 0;  // Kind::VertexSet
  };
  std::vector<Elem> elems;
};

// Pluggable property: a named, deterministic, total predicate on
// structures together with the kinds of its free-variable slots.
// evaluate() returns false on structures that do not match the
// signature; structures of larger arity match with extras ignored.
struct Property {
  std::string name;
  std::vector<Kind> element_kinds;  // slots 2..p, no Kind::Star here
  std::function<bool(const Structure&)> evaluate;
  // Optional fast twin of evaluate for simple glued graphs; must agree
  // with evaluate wherever both apply.
  std::function<bool(const CompactStructure&)> evaluate_compact;

  int arity() const { return 1 + static_cast<int>(element_kinds.size()); }
  bool matches(const Structure& s) const;
};

// Registry of the shipped toy properties (properties.cpp):
//   even_vertex_count, is_connected, vset_even,
//   vset_spanning_connected, constant_true.
const std::vector<Property>& shipped_properties();
const Property* find_property(const std::string& name);

// Per-slot compatibility behavior; two boundaried structures are
// context-equivalent iff their label sets and spec vectors agree.
// FreeVertex and FreeEdge both accept only a star on the other side;
// they are kept distinct so replacements preserve slot types.
struct ElemSpec {
  enum Tag { Star, FreeVertex, FreeEdge, BoundaryVertex, BoundaryEdge, Set } tag;
  int a = 0, b = 0;  // label / label pair / set kind
  auto key() const { return std::tuple(static_cast<int>(tag), a, b); }
  bool operator==(const ElemSpec& o) const { return key() == o.key(); }
  bool operator<(const ElemSpec& o) const { return key() < o.key(); }
};

struct CompatKey {
  std::set<int> labels;
  std::vector<ElemSpec> specs;
  bool operator==(const CompatKey& o) const {
    return labels == o.labels && specs == o.specs;
  }
  bool operator<(const CompatKey& o) const {
    if (labels != o.labels) return labels < o.labels;
    return specs < o.specs;
  }
};

CompatKey compat_key(const BoundariedStructure& s);

// One minimal member per equivalence class of the bounded brute-force
// computation, plus the pairwise answer matrix over the representatives
// themselves (the test-set family).
struct RepresentativeTable {
  std::string property;
  int label_budget = 0;  // 2c
  int arity = 1;
  std::vector<Kind> element_kinds;
  int universe_bound = 0;
  int context_bound = 0;
  int max_code_length = 0;   // r: longest canonical code over representatives
  int max_rep_vertices = 0;
  std::vector<BoundariedStructure> reps;
  std::vector<std::string> rep_codes;           // canonical codes, aligned
  std::vector<std::vector<int8_t>> answers;     // -1 incompatible, else 0/1

  size_t size() const { return reps.size(); }
  // Schedule mirrored from the construction: s >= 2r*2^c + r.
  int schedule_s(int c) const {
    return 2 * max_code_length * (1 << c) + max_code_length;
  }
};

// Full by-product of table construction, kept for cross-validation:
// the deduplicated universe, class ids, and the evaluation rows over
// the compatible contexts of each compat block.
struct ClassComputation {
  RepresentativeTable table;
  std::vector<BoundariedStructure> universe;
  std::vector<int> class_of;           // universe index -> class index
  std::vector<int> rep_member;         // class index -> universe index
  // context indices (into universe) compatible with a member, and that
  // member's evaluation row over them, aligned pairwise
  std::vector<std::vector<int>> compat_contexts;   // per universe member
  std::vector<std::vector<uint8_t>> rows;          // per universe member
};

// Brute-force constructive finite state: enumerate every boundaried
// structure with at most universe_bound vertices over labels in
// [label_budget] (simple graphs, deduplicated up to label- and
// element-preserving isomorphism), partition by compatibility type and
// by the evaluation vector over every compatible context of at most
// context_bound vertices, and keep the shortest-encoding member of
// each class. Throws BudgetError beyond universe_bound/context_bound 6
// or label_budget 4.
RepresentativeTable compute_classes(const Property& prop, int label_budget,
                                    int universe_bound, int context_bound);
ClassComputation compute_classes_detailed(const Property& prop,
                                          int label_budget, int universe_bound,
                                          int context_bound);

// Decision procedure assumed correct on unbreakable structures; tests
// plug in direct evaluation, which is correct everywhere.
using UnbreakableSolver = std::function<bool(const Structure&)>;
UnbreakableSolver direct_solver(const Property& prop);

struct UnderstandStats {
  int base_cases = 0;
  int witness_steps = 0;     // recursion steps driven by a break witness
  int progress_guards = 0;   // rejoin produced no shrink; answered directly
  struct Step {
    int n = 0;
    int beta_vertices = 0;
    int gamma_vertices = 0;
    int sep_order = 0;
    int threshold = 0;  // floor((s-r)/2^c)
    int rep_cap = 0;    // the table's max representative vertex count
  };
  std::vector<Step> steps;
};

// Test-set identification: evaluate the solver on a glued with every
// compatible representative, likewise for every candidate of a's
// compatibility type, and return the unique candidate with a matching
// answer vector. A missing or ambiguous match is a table/solver
// inconsistency and faults hard.
BoundariedStructure understand_unbreakable(const BoundariedStructure& a,
                                           const RepresentativeTable& table,
                                           const UnbreakableSolver& solver);

// Restriction of a to the X side of a witnessing separation. Requires
// |X ∩ δ| <= |Y ∩ δ|; callers swap sides to arrange that. Separator
// vertices outside the boundary get the smallest unused labels in
// [label_budget], ascending by vertex id.
BoundariedStructure split_beta(const BoundariedStructure& a,
                               const Separation& sep, int label_budget);

// Glues the understood replacement of the X side back onto G[Y],
// identifying separator-labeled vertices, and restricts/extends the
// elements accordingly.
BoundariedStructure rejoin_gamma(const BoundariedStructure& a,
                                 const BoundariedStructure& beta_rep,
                                 const Separation& sep, int label_budget);

// Recursive understanding: break, split, understand the split part,
// reassemble with the representative, recurse. Falls through to
// understand_unbreakable when the graph is small, certified
// unbreakable, or when reassembly would not shrink the instance.
BoundariedStructure understand(const BoundariedStructure& a,
                               const RepresentativeTable& table,
                               const UnbreakableSolver& solver, int s, int c,
                               UnderstandStats* stats = nullptr);

// Wraps a plain structure with an empty boundary, understands it, and
// evaluates the solver on the representative glued with the empty-graph
// context (stars at vertex/edge slots, empty sets elsewhere).
bool solve_cmso(const Structure& s0, const RepresentativeTable& table,
                const UnbreakableSolver& solver, int s, int c,
                UnderstandStats* stats = nullptr);

CompactStructure compact_of_structure(const Structure& s);

}  // namespace unbreak

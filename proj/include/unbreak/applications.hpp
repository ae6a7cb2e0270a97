#pragma once

#include <optional>

#include "unbreak/finite_state.hpp"
#include "unbreak/graph.hpp"
#include "unbreak/io.hpp"

namespace unbreak {

// Vertex multiway cut-uncut: delete at most k non-terminals so that
// terminals share a component exactly when related.
struct MwcuInstance {
  Graph graph;
  VertexSet terminals;
  std::vector<VertexSet> relation;  // equivalence classes partitioning terminals
  int k = 0;
};

// Throws Error unless the relation classes partition the terminal set.
void validate_mwcu(const MwcuInstance& inst);

MwcuInstance mwcu_from_file(const ParsedGraphFile& parsed, int k);

// Red-blue reformulation: the red edge set induces a cluster graph;
// a solution S ⊆ V \ V[R] of size at most k makes components of
// (G \ S) \ R match the red cliques exactly. Singleton relation
// classes are carried as red self-loops so V[R] covers them.
struct RbcuInstance {
  Graph graph;
  std::set<int> red_edges;
  int k = 0;
};

struct RbcuReduction {
  RbcuInstance instance;
  std::vector<int> added_edges;  // indices of the inserted red edges
};

RbcuReduction mwcu_to_rbcu(const MwcuInstance& inst);

// Vertex sets of the red cliques, smallest member first; throws Error
// if the red subgraph is not a disjoint union of cliques.
std::vector<VertexSet> red_cliques(const RbcuInstance& inst);
VertexSet red_vertex_cover_set(const RbcuInstance& inst);  // V[R]

bool rbcu_check(const RbcuInstance& inst, const VertexSet& solution);

struct RbcuSolveStats {
  int max_depth = 0;  // deepest branching level, root at 0
  int calls = 0;
};

// Branching solver for instances whose graph is (s_of_k, k)-unbreakable
// (a caller contract, checked by harnesses): guess the clique allowed a
// large component, enumerate bounded connected supersets of the others,
// and branch on deleting their neighborhoods. Every returned set passes
// rbcu_check.
std::optional<VertexSet> rbcu_solve_unbreakable(const RbcuInstance& inst,
                                                int s_of_k,
                                                RbcuSolveStats* stats = nullptr);

// Harness predicate mirroring the structural bound on unbreakable
// instances: all red components except at most one stay within s_of_k
// vertices under a verified solution.
bool rbcu_component_bound_check(const RbcuInstance& inst,
                                const VertexSet& solution, int s_of_k);

// Find U with root-connected G[U], treewidth at most t, |N(U)| <= k and
// the property true on G[U].
struct PendantInstance {
  Graph graph;
  int k = 0;
  int t = 0;
  const Property* prop = nullptr;  // arity-1 property on induced subgraphs
};

std::optional<VertexSet> pendant_solve_unbreakable(const PendantInstance& inst,
                                                   int s_of_k);

// |U| < 3 (s_of_k + t)
bool pendant_size_bound_check(const VertexSet& u, int s_of_k, int t);

}  // namespace unbreak

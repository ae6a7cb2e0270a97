#pragma once

#include <optional>

#include "unbreak/applications.hpp"
#include "unbreak/connected_enum.hpp"
#include "unbreak/finite_state.hpp"
#include "unbreak/graph.hpp"

namespace unbreak {

// Brute-force references, intentionally simple. They reuse the core
// data types (and, for equivalence, the property's own evaluators) but
// none of the main algorithms: enumeration, gluing, deduplication and
// partitioning are reimplemented from the definitions. Budgets are
// enforced before enumeration starts; exceeding one is an error, never
// a wrong answer.
struct OracleBudget {
  int max_vertices = 14;
  int max_mwcu_vertices = 12;
  int max_mwcu_k = 3;
  int max_subsets_log2 = 22;
};

// Exhaustive (s,c)-witness search over all separators of size <= c and
// all component bipartitions.
std::optional<Separation> oracle_witnessing_separation(
    const Graph& g, int s, int c, const OracleBudget& budget = {});

// Try all S ⊆ V \ T of size <= k against the definition directly.
std::optional<VertexSet> oracle_mwcu(const MwcuInstance& inst,
                                     const OracleBudget& budget = {});

// Full-subset filter for the connected-set query.
std::vector<VertexSet> oracle_connected_sets(const Graph& g,
                                             const ConnectedSetQuery& query,
                                             const OracleBudget& budget = {});

// Independent double enumeration of the bounded canonical-equivalence
// partition; classes come back as lists of member structures.
std::vector<std::vector<BoundariedStructure>> oracle_equivalence(
    const Property& prop, int label_budget, int universe_bound,
    int context_bound);

}  // namespace unbreak

#pragma once

#include <optional>

#include "unbreak/graph.hpp"
#include "unbreak/universal.hpp"

namespace unbreak {

// Integer threshold table used throughout this module. Fractional
// bounds map to integers as follows; the brute-force oracle mirrors
// the same convention so tests compare like with like.
//   witnessing check at s/2^c      ->  sides strictly greater than floor(s/2^c)
//   "component of size >= s/2"     ->  size >= floor(s/2)+1 (universal-set sizing)
//   "small component" (< s/2)      ->  size <= floor(s/2)
//   trim target 3s/2               ->  floor(3s/2)
// For c = 0 the two claims cannot regroup whole components, so break_alg
// finishes with an exact component-grouping pass before certifying.

struct BreakOutcome {
  std::optional<Separation> witness;  // passes witness_holds at floor(s/2^c)
  int certified_s = 0;                // set when unbreakable
  int certified_c = 0;
  bool unbreakable() const { return !witness.has_value(); }
};

struct BreakOptions {
  uint64_t seed = 0;
  int jobs = 1;
};

// floor(s / 2^c)
int witness_threshold(int s, int c);

// order <= c and both sides strictly larger than `threshold` (which may
// be 0, unlike BreakParams::s).
bool witness_holds(const Graph& g, const Separation& sep, int threshold, int c);

// Smallest S disjoint from a ∪ b whose removal separates a from b.
// Throws Error when a and b overlap or are joined by an edge (no
// disjoint cut exists) or when either side is empty.
VertexSet min_vertex_cut(const Graph& g, const VertexSet& a, const VertexSet& b);

// Universal-set sweep over pairs of components of G[f^{-1}(0)]: find a
// small cut between two components and split the graph around it.
// Returns a separation passing witness_holds at max(floor(s/2),
// floor(s/2^c)), or nothing. "Nothing" is correct whenever no
// (s,c)-witnessing separation with large components on both sides
// exists.
std::optional<Separation> find_witness_large_components(
    const Graph& g, int s, int c, const BreakOptions& opts = {});

// Universal-set sweep grouping small components by identical
// neighborhoods, trimming oversized groups largest-first. Returns a
// separation passing witness_holds at floor(s/2^c), or nothing.
// "Nothing" is correct whenever no (s,c)-witnessing separation with a
// small-component side exists.
std::optional<Separation> find_witness_small_components(
    const Graph& g, int s, int c, const BreakOptions& opts = {});

// Either a separation verified at floor(s/2^c) or a certificate that g
// is (s,c)-unbreakable. Emitting an unverified separation is an
// internal fault, never silent.
BreakOutcome break_alg(const Graph& g, int s, int c,
                       const BreakOptions& opts = {});

// Per-(n,k,p) cache of the universal families used by the sweeps;
// read-only while sweeps run. Exposed for tests.
const UniversalFamily& cached_universal_set(int n, int k, int p, uint64_t seed);

}  // namespace unbreak

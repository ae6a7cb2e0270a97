#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unbreak/errors.hpp"

namespace unbreak {

// Family of {0,1} assignments on [n]. An (n,k,p)-universal set realizes,
// for every k-subset I of [n] and every pattern on I with exactly p
// ones, some member agreeing with the pattern on I. Coordinates are
// 1-based in the contract and bit i-1 of the stored mask in memory;
// that conversion never leaves this module.
struct UniversalFamily {
  int n = 0;
  int k = 0;
  int p = 0;
  std::vector<uint64_t> functions;  // one bitmask per member, bits [0, n)

  size_t size() const { return functions.size(); }
  bool value(size_t member, int coordinate_1based) const {
    return (functions[member] >> (coordinate_1based - 1)) & 1u;
  }
};

// First uncovered constraint, reported 1-based and lexicographically
// smallest: the k indices of I ascending, then the one-positions.
struct UniversalViolation {
  std::vector<int> indices;
  std::vector<int> ones;
};

struct BuildOptions {
  uint64_t seed = 0;
  // Constraint-universe cap for the deterministic exact paths.
  uint64_t max_constraints = 2'000'000;
  // Cap on the indicator-family fallback size.
  uint64_t max_indicator_family = 500'000;
};

struct BuildReport {
  std::string method;          // "trivial" | "greedy" | "indicators" | "random"
  bool verified = false;       // exhaustively checked during build
  double failure_probability = 0.0;  // only meaningful for "random"
};

// Constructs an (n,k,p)-universal set. Deterministic for the exact
// paths and for a fixed seed on the randomized path. Throws Error on
// parameter violations (need 0 <= p <= k <= n, n >= 1, n <= 64).
UniversalFamily build_universal_set(int n, int k, int p,
                                    const BuildOptions& opts = {},
                                    BuildReport* report = nullptr);

// Exhaustive check over all C(n,k)*C(k,p) constraints. Returns the
// lexicographically first violation, or nullopt if the family covers
// everything. jobs > 1 fans the constraint blocks out across threads;
// the reduction keeps the smallest witness, so the answer does not
// depend on the schedule.
std::optional<UniversalViolation> verify_universal_set(
    const UniversalFamily& f, int jobs = 1,
    uint64_t max_constraints = 200'000'000);

uint64_t binomial(int n, int k);  // saturates at UINT64_MAX

std::string write_universal_family(const UniversalFamily& f);
UniversalFamily parse_universal_family(std::istream& in);
UniversalFamily parse_universal_family_file(const std::string& path);

}  // namespace unbreak

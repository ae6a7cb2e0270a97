#include "unbreak/universal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

namespace unbreak {

uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long double approx = 1.0L;
  uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    approx = approx * (n - k + i) / i;
    if (approx > 1e18L) return UINT64_MAX;
    result = result * static_cast<uint64_t>(n - k + i) / static_cast<uint64_t>(i);
  }
  return result;
}

namespace {

bool next_combination(std::vector<int>& idx, int n) {
  int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

uint64_t mask_of(const std::vector<int>& idx) {
  uint64_t m = 0;
  for (int i : idx) m |= 1ull << i;
  return m;
}

struct Constraint {
  uint64_t i_mask;
  uint64_t ones_mask;
};

// All (I, pattern) constraints in lexicographic order: I-subsets by
// ascending index vectors, then one-positions within I the same way.
std::vector<Constraint> enumerate_constraints(int n, int k, int p) {
  std::vector<Constraint> out;
  std::vector<int> isel(k);
  for (int i = 0; i < k; ++i) isel[i] = i;
  do {
    uint64_t im = mask_of(isel);
    std::vector<int> psel(p);
    for (int i = 0; i < p; ++i) psel[i] = i;
    if (p == 0) {
      out.push_back({im, 0});
    } else {
      do {
        uint64_t om = 0;
        for (int q : psel) om |= 1ull << isel[q];
        out.push_back({im, om});
      } while (next_combination(psel, k));
    }
  } while (next_combination(isel, n));
  return out;
}

bool covered_by_family(const std::vector<uint64_t>& fam, Constraint c) {
  for (uint64_t f : fam) {
    if ((f & c.i_mask) == c.ones_mask) return true;
  }
  return false;
}

UniversalViolation violation_from(Constraint c, int n) {
  UniversalViolation v;
  for (int i = 0; i < n; ++i) {
    if ((c.i_mask >> i) & 1u) v.indices.push_back(i + 1);
    if ((c.ones_mask >> i) & 1u) v.ones.push_back(i + 1);
  }
  return v;
}

void greedy_cover(int n, int k, UniversalFamily& fam,
                  const std::vector<Constraint>& constraints) {
  std::vector<char> covered(constraints.size(), 0);
  size_t first_uncovered = 0;
  uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  while (true) {
    while (first_uncovered < constraints.size() && covered[first_uncovered]) {
      ++first_uncovered;
    }
    if (first_uncovered == constraints.size()) break;
    std::vector<size_t> live;
    for (size_t i = first_uncovered; i < constraints.size(); ++i) {
      if (!covered[i]) live.push_back(i);
    }
    Constraint target = constraints[first_uncovered];
    uint64_t comp = full & ~target.i_mask;
    // candidates agree with the target constraint and differ off I
    std::vector<uint64_t> cands;
    uint64_t sub = comp;
    while (true) {
      cands.push_back(target.ones_mask | sub);
      if (sub == 0) break;
      sub = (sub - 1) & comp;
    }
    std::sort(cands.begin(), cands.end());
    uint64_t best_mask = cands.front();
    size_t best_gain = 0;
    for (uint64_t f : cands) {
      size_t gain = 0;
      for (size_t i : live) {
        if ((f & constraints[i].i_mask) == constraints[i].ones_mask) ++gain;
      }
      if (gain > best_gain) {
        best_gain = gain;
        best_mask = f;
      }
    }
    fam.functions.push_back(best_mask);
    for (size_t i : live) {
      if ((best_mask & constraints[i].i_mask) == constraints[i].ones_mask) {
        covered[i] = 1;
      }
    }
  }
}

}  // namespace

UniversalFamily build_universal_set(int n, int k, int p,
                                    const BuildOptions& opts,
                                    BuildReport* report) {
  if (n < 1 || n > 64) throw Error("build_universal_set: need 1 <= n <= 64");
  if (k < 1 || k > n) throw Error("build_universal_set: need 1 <= k <= n");
  if (p < 0 || p > k) throw Error("build_universal_set: need 0 <= p <= k");
  UniversalFamily fam;
  fam.n = n;
  fam.k = k;
  fam.p = p;
  BuildReport local;
  uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);

  uint64_t total = binomial(n, k);
  uint64_t per_i = binomial(k, p);
  bool overflow = total == UINT64_MAX || per_i == UINT64_MAX ||
                  (per_i != 0 && total > UINT64_MAX / per_i);
  uint64_t constraint_count = overflow ? UINT64_MAX : total * per_i;

  if (p == 0) {
    fam.functions = {0};
    local = {"trivial", true, 0.0};
  } else if (p == k) {
    fam.functions = {full};
    local = {"trivial", true, 0.0};
  } else if (constraint_count <= opts.max_constraints && n - k <= 12 &&
             constraint_count <= 200'000) {
    auto constraints = enumerate_constraints(n, k, p);
    greedy_cover(n, k, fam, constraints);
    local = {"greedy", true, 0.0};
  } else if (binomial(n, p) <= opts.max_indicator_family) {
    // all weight-p indicator vectors; for any constraint (I, J) the
    // member with ones exactly J agrees on I
    std::vector<int> sel(p);
    for (int i = 0; i < p; ++i) sel[i] = i;
    do {
      fam.functions.push_back(mask_of(sel));
    } while (next_combination(sel, n));
    local = {"indicators", true, 0.0};
  } else {
    double q = std::pow(static_cast<double>(p) / k, p) *
               std::pow(1.0 - static_cast<double>(p) / k, k - p);
    double draws_d = static_cast<double>(per_i) * k *
                     (std::log(2.0) + k * std::log(static_cast<double>(n)));
    uint64_t draws = static_cast<uint64_t>(std::ceil(draws_d));
    if (draws > 50'000'000) throw BudgetError("universal set: draw count too large");
    std::mt19937_64 rng(opts.seed);
    std::bernoulli_distribution coin(static_cast<double>(p) / k);
    for (uint64_t d = 0; d < draws; ++d) {
      uint64_t f = 0;
      for (int i = 0; i < n; ++i) {
        if (coin(rng)) f |= 1ull << i;
      }
      fam.functions.push_back(f);
    }
    if (constraint_count <= opts.max_constraints) {
      auto constraints = enumerate_constraints(n, k, p);
      for (const Constraint& c : constraints) {
        if (!covered_by_family(fam.functions, c)) {
          fam.functions.push_back(c.ones_mask);
        }
      }
      local = {"random", true, 0.0};
    } else {
      double fail = static_cast<double>(constraint_count) *
                    std::pow(1.0 - q, static_cast<double>(draws));
      local = {"random", false, std::min(1.0, fail)};
    }
  }

  // drop duplicates, keeping first occurrences
  std::set<uint64_t> seen;
  std::vector<uint64_t> unique;
  for (uint64_t f : fam.functions) {
    if (seen.insert(f).second) unique.push_back(f);
  }
  fam.functions = std::move(unique);
  if (report) *report = local;
  return fam;
}

std::optional<UniversalViolation> verify_universal_set(
    const UniversalFamily& f, int jobs, uint64_t max_constraints) {
  if (f.n < 1 || f.n > 64 || f.k < 1 || f.k > f.n || f.p < 0 || f.p > f.k) {
    throw Error("verify_universal_set: malformed family parameters");
  }
  uint64_t total = binomial(f.n, f.k);
  uint64_t per_i = binomial(f.k, f.p);
  if (total == UINT64_MAX || per_i == UINT64_MAX ||
      total > max_constraints / std::max<uint64_t>(per_i, 1)) {
    throw BudgetError("verify_universal_set: constraint universe too large");
  }

  auto scan = [&](uint64_t stride, uint64_t offset) -> std::pair<uint64_t, Constraint> {
    // returns (global rank of first violation in this residue class, constraint)
    std::vector<int> isel(f.k);
    for (int i = 0; i < f.k; ++i) isel[i] = i;
    uint64_t i_rank = 0;
    std::pair<uint64_t, Constraint> best{UINT64_MAX, {}};
    do {
      if (i_rank % stride == offset) {
        uint64_t im = mask_of(isel);
        std::vector<int> psel(f.p);
        for (int i = 0; i < f.p; ++i) psel[i] = i;
        uint64_t p_rank = 0;
        bool more = true;
        while (more) {
          uint64_t om = 0;
          for (int q : psel) om |= 1ull << isel[q];
          Constraint c{im, om};
          if (!covered_by_family(f.functions, c)) {
            best = {i_rank * per_i + p_rank, c};
            return best;
          }
          ++p_rank;
          more = f.p > 0 && next_combination(psel, f.k);
        }
      }
      ++i_rank;
    } while (next_combination(isel, f.n));
    return best;
  };

  std::pair<uint64_t, Constraint> best{UINT64_MAX, {}};
  if (jobs <= 1) {
    best = scan(1, 0);
  } else {
    std::vector<std::pair<uint64_t, Constraint>> results(jobs, {UINT64_MAX, {}});
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) {
      threads.emplace_back([&, t]() { results[t] = scan(jobs, t); });
    }
    for (auto& th : threads) th.join();
    for (const auto& r : results) {
      if (r.first < best.first) best = r;
    }
  }
  if (best.first == UINT64_MAX) return std::nullopt;
  return violation_from(best.second, f.n);
}

std::string write_universal_family(const UniversalFamily& f) {
  std::ostringstream os;
  os << "u " << f.n << " " << f.k << " " << f.p << "\n";
  for (uint64_t fn : f.functions) {
    for (int i = 0; i < f.n; ++i) os << (((fn >> i) & 1u) ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

UniversalFamily parse_universal_family(std::istream& in) {
  UniversalFamily fam;
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag[0] == '#') continue;
    if (!have_header) {
      if (tag != "u") throw ParseError("expected header `u <n> <k> <p>`", line_no);
      if (!(ls >> fam.n >> fam.k >> fam.p)) {
        throw ParseError("expected header `u <n> <k> <p>`", line_no);
      }
      if (fam.n < 1 || fam.n > 64) throw ParseError("n out of range", line_no);
      have_header = true;
      continue;
    }
    if (static_cast<int>(tag.size()) != fam.n) {
      throw ParseError("vector length does not match n", line_no);
    }
    uint64_t f = 0;
    for (int i = 0; i < fam.n; ++i) {
      if (tag[i] == '1') {
        f |= 1ull << i;
      } else if (tag[i] != '0') {
        throw ParseError("vectors must be 0/1 strings", line_no);
      }
    }
    fam.functions.push_back(f);
  }
  if (!have_header) throw ParseError("missing `u` header line", 0);
  return fam;
}

UniversalFamily parse_universal_family_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path, 0);
  return parse_universal_family(in);
}

}  // namespace unbreak

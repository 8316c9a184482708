#pragma once

#include <cstdint>
#include <vector>

#include "lrrc/params.hpp"
#include "lrrc/policies.hpp"
#include "lrrc/rational.hpp"

namespace lrrc {

// Signed family labels per node: 1..c for complete families, 0 for the
// incomplete family, -c marks last-complete-family members that do not serve
// the incomplete family.
struct FamilyIndexVector {
  std::vector<int> entries;  // index 0 = node 1
};

FamilyIndexVector family_index_vector(int n, int d, int r);

// Rotating family index permutation: the vector written into an
// (n-d-r) x ceil(n/(n-d-r)) table column by column, read row by row.
std::vector<int> rfip(int n, int d, int r);

// y_i over a family index permutation (1-based i). Zero coordinate: count of
// earlier strictly-positive coordinates; nonzero: count of earlier
// coordinates of different absolute value.
int y_value(const std::vector<int>& pi, int i);

// z_i over a node-index vector p (1-based i): distinct earlier entries lying
// in the candidate set of p_i.
int z_value(const std::vector<int>& p, int i, const FamilyStructure& fs);

enum class TradeoffMode { Exhaustive, Rfip };

struct EnumerationBudget {
  std::uint64_t max_permutations = 5'000'000;
  std::uint64_t max_vectors = 5'000'000;
};

// The family scheme's exact tradeoff: min over family index permutations of
// sum_{i<=k} min((d-y_i)^+ beta, alpha). Exhaustive mode enumerates distinct
// multiset permutations (BudgetError beyond the cap); Rfip mode evaluates the
// single permutation pi* (minimal at the MBR point, an upper bound elsewhere).
Rat mfhs_tradeoff_value(const SystemParams& p, TradeoffMode mode,
                        const EnumerationBudget& budget = {});

// As above but returns the minimizing permutation too.
struct TradeoffResult {
  Rat value;
  std::vector<int> minimizing_pi;
};
TradeoffResult mfhs_tradeoff_min(const SystemParams& p, const EnumerationBudget& budget = {});

// MBR corner of the family scheme: alpha = d*beta,
// beta = M / sum_{i<=k} (d - y_i(pi*))^+.
MbrPoint mfhs_mbr_point(int n, int k, int d, int r, const Rat& file_size);

// Brute-force lower bound: min over all p in {1..n}^k of
// sum_i min((d-z_i(p))^+ beta, alpha). BudgetError when n^k exceeds the cap.
Rat zp_lower_bound(const SystemParams& p, const EnumerationBudget& budget = {});

// sum_{i<=k} (d - y_i(pi))^+ for a fixed permutation.
std::int64_t mbr_denominator(const std::vector<int>& pi, int k, int d);

}  // namespace lrrc

#include "lrrc/family.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "lrrc/errors.hpp"

namespace lrrc {

FamilyIndexVector family_index_vector(int n, int d, int r) {
  FamilyStructure fs = mfhs_build(n, d, r);
  FamilyIndexVector v;
  v.entries.assign(static_cast<std::size_t>(n), 0);
  int c = static_cast<int>(fs.complete_families.size());
  for (int node = 1; node <= n; ++node) {
    int fam = fs.family_of[static_cast<std::size_t>(node)];
    v.entries[static_cast<std::size_t>(node - 1)] = fam;
  }
  if (!fs.incomplete_family.empty()) {
    // Last-complete-family members outside the incomplete family's candidate
    // set get a negative mark.
    NodeMask served = fs.candidate_set(fs.incomplete_family.front());
    for (int node : fs.complete_families[static_cast<std::size_t>(c - 1)])
      if (!contains(served, node)) v.entries[static_cast<std::size_t>(node - 1)] = -c;
  }
  return v;
}

std::vector<int> rfip(int n, int d, int r) {
  FamilyIndexVector v = family_index_vector(n, d, r);
  int rows = n - d - r;
  int cols = (n + rows - 1) / rows;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int row = 0; row < rows; ++row)
    for (int col = 0; col < cols; ++col) {
      int idx = col * rows + row;  // column-by-column fill
      if (idx < n) out.push_back(v.entries[static_cast<std::size_t>(idx)]);
    }
  return out;
}

int y_value(const std::vector<int>& pi, int i) {
  if (i < 1 || i > static_cast<int>(pi.size())) throw PreconditionError("index out of range");
  int self = pi[static_cast<std::size_t>(i - 1)];
  int count = 0;
  for (int j = 0; j < i - 1; ++j) {
    int other = pi[static_cast<std::size_t>(j)];
    if (self == 0 ? other > 0 : std::abs(other) != std::abs(self)) ++count;
  }
  return count;
}

int z_value(const std::vector<int>& p, int i, const FamilyStructure& fs) {
  if (i < 1 || i > static_cast<int>(p.size())) throw PreconditionError("index out of range");
  for (int node : p)
    if (node < 1 || node > fs.n) throw PreconditionError("node index out of range");
  NodeMask candidates = fs.candidate_set(p[static_cast<std::size_t>(i - 1)]);
  NodeMask seen = 0;
  for (int j = 0; j < i - 1; ++j) seen |= node_bit(p[static_cast<std::size_t>(j)]);
  return set_size(seen & candidates);
}

std::int64_t mbr_denominator(const std::vector<int>& pi, int k, int d) {
  std::int64_t sum = 0;
  for (int i = 1; i <= k; ++i) sum += std::max(d - y_value(pi, i), 0);
  return sum;
}

namespace {

Rat permutation_cut(const std::vector<int>& pi, const SystemParams& p) {
  Rat total = 0;
  for (int i = 1; i <= p.k; ++i)
    total += min(Rat(std::max(p.d - y_value(pi, i), 0)) * p.beta, p.alpha);
  return total;
}

std::uint64_t distinct_permutation_count(std::vector<int> multiset) {
  std::sort(multiset.begin(), multiset.end());
  long double count = 1;
  std::size_t i = 0;
  std::size_t pos = 0;
  while (i < multiset.size()) {
    std::size_t run = 1;
    while (i + run < multiset.size() && multiset[i + run] == multiset[i]) ++run;
    for (std::size_t j = 1; j <= run; ++j) count = count * static_cast<long double>(++pos) /
                                                    static_cast<long double>(j);
    i += run;
  }
  return static_cast<std::uint64_t>(count + 0.5L);
}

}  // namespace

TradeoffResult mfhs_tradeoff_min(const SystemParams& p, const EnumerationBudget& budget) {
  require_valid(p);
  std::vector<int> pi = family_index_vector(p.n, p.d, p.r).entries;
  std::sort(pi.begin(), pi.end());
  if (distinct_permutation_count(pi) > budget.max_permutations)
    throw BudgetError("multiset permutation count exceeds the cap");

  TradeoffResult best{permutation_cut(pi, p), pi};
  while (std::next_permutation(pi.begin(), pi.end())) {
    Rat v = permutation_cut(pi, p);
    if (v < best.value) best = {v, pi};
  }
  return best;
}

Rat mfhs_tradeoff_value(const SystemParams& p, TradeoffMode mode,
                        const EnumerationBudget& budget) {
  if (mode == TradeoffMode::Rfip) {
    require_valid(p);
    return permutation_cut(rfip(p.n, p.d, p.r), p);
  }
  return mfhs_tradeoff_min(p, budget).value;
}

MbrPoint mfhs_mbr_point(int n, int k, int d, int r, const Rat& file_size) {
  require_valid(n, k, d, r);
  std::int64_t denom = mbr_denominator(rfip(n, d, r), k, d);
  if (denom == 0) throw UnprotectableError("zero MBR denominator for the family scheme");
  MbrPoint pt;
  pt.beta = file_size / Rat(denom);
  pt.alpha = pt.beta * Rat(d);
  return pt;
}

Rat zp_lower_bound(const SystemParams& p, const EnumerationBudget& budget) {
  require_valid(p);
  FamilyStructure fs = mfhs_build(p.n, p.d, p.r);

  double total = std::pow(static_cast<double>(p.n), p.k);
  if (total > static_cast<double>(budget.max_vectors))
    throw BudgetError("n^k exceeds the brute-force cap");

  // Odometer over p in {1..n}^k, maintaining prefix masks for z.
  std::vector<int> vec(static_cast<std::size_t>(p.k), 1);
  bool first = true;
  Rat best = 0;
  while (true) {
    Rat value = 0;
    NodeMask seen = 0;
    for (int i = 0; i < p.k; ++i) {
      int node = vec[static_cast<std::size_t>(i)];
      int z = set_size(seen & fs.candidate_set(node));
      value += min(Rat(std::max(p.d - z, 0)) * p.beta, p.alpha);
      seen |= node_bit(node);
    }
    if (first || value < best) {
      best = value;
      first = false;
    }
    int at = p.k - 1;
    while (at >= 0 && vec[static_cast<std::size_t>(at)] == p.n) {
      vec[static_cast<std::size_t>(at)] = 1;
      --at;
    }
    if (at < 0) break;
    ++vec[static_cast<std::size_t>(at)];
  }
  return best;
}

}  // namespace lrrc

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "lrrc/adversary.hpp"
#include "lrrc/errors.hpp"

namespace lrrc {

namespace {

// A growth history matters to future collectors only through the vector of
// min-cut values from the source to every subset of the n active nodes. One
// repair (replace slot F, helpers H) maps that vector forward in closed form:
// the cut either crosses the newcomer's storage edge, or splits its in-edges
// into a kept part W and a severed part H \ W. Exploring these vectors, up to
// relabeling of the n slots, is an exact quotient of exploring the graphs.
class PolymatroidExplorer {
 public:
  PolymatroidExplorer(int n, int d, std::int64_t alpha, std::int64_t beta)
      : n_(n), d_(d), a_(alpha), b_(beta), size_(1u << n) {
    if (static_cast<std::int64_t>(n) * alpha > 60000)
      throw PreconditionError("scaled alpha too large for the explorer's state encoding");
  }

  using State = std::vector<std::uint16_t>;

  State initial() const {
    State f(size_);
    for (std::uint32_t s = 0; s < size_; ++s)
      f[s] = static_cast<std::uint16_t>(a_ * std::popcount(s));
    return f;
  }

  State child(const State& f, int failed_slot, std::uint32_t helpers) const {
    State g = f;
    std::uint32_t fbit = 1u << failed_slot;
    for (std::uint32_t s = 0; s < size_; ++s) {
      if (!(s & fbit)) continue;
      std::uint32_t rest = s & ~fbit;
      std::int64_t best = f[rest] + a_;
      std::uint32_t w = helpers;
      while (true) {
        std::int64_t v = static_cast<std::int64_t>(d_ - std::popcount(w)) * b_ + f[rest | w];
        best = std::min(best, v);
        if (w == 0) break;
        w = (w - 1) & helpers;
      }
      g[s] = static_cast<std::uint16_t>(best);
    }
    return g;
  }

  // Canonical representative under slot relabeling: minimum relabeled vector
  // over permutations that respect per-slot invariants (any isomorphism must,
  // so the restricted minimum is a true canonical form).
  State canonical(const State& f) const {
    struct Sig {
      std::uint64_t key;
      int slot;
      bool operator<(const Sig& o) const { return key < o.key || (key == o.key && slot < o.slot); }
    };
    std::vector<Sig> sigs;
    for (int i = 0; i < n_; ++i) {
      std::uint32_t bit = 1u << i;
      std::uint64_t key = (static_cast<std::uint64_t>(f[bit]) << 48) ^
                          (static_cast<std::uint64_t>(f[(size_ - 1) & ~bit]) << 32);
      std::uint64_t pair_mix = 0;
      for (int j = 0; j < n_; ++j)
        if (j != i) pair_mix += 0x9e3779b97f4a7c15ull * f[bit | (1u << j)];
      sigs.push_back({key ^ (pair_mix & 0xffffffffull), i});
    }
    std::sort(sigs.begin(), sigs.end());

    std::vector<int> order(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) order[static_cast<std::size_t>(i)] = sigs[static_cast<std::size_t>(i)].slot;

    // Equal-signature blocks; permute within blocks only.
    State best;
    std::vector<std::pair<int, int>> blocks;
    int start = 0;
    for (int i = 1; i <= n_; ++i)
      if (i == n_ || sigs[static_cast<std::size_t>(i)].key != sigs[static_cast<std::size_t>(start)].key) {
        blocks.emplace_back(start, i);
        start = i;
      }
    permute_blocks(f, order, blocks, 0, best);
    return best;
  }

  std::uint32_t size() const { return size_; }

 private:
  void permute_blocks(const State& f, std::vector<int>& order,
                      const std::vector<std::pair<int, int>>& blocks, std::size_t at,
                      State& best) const {
    if (at == blocks.size()) {
      State relabeled(size_);
      // order[new_slot] = old_slot; map each subset of new slots back.
      for (std::uint32_t s = 0; s < size_; ++s) {
        std::uint32_t old_mask = 0;
        std::uint32_t rem = s;
        while (rem) {
          int j = std::countr_zero(rem);
          rem &= rem - 1;
          old_mask |= 1u << order[static_cast<std::size_t>(j)];
        }
        relabeled[s] = f[old_mask];
      }
      if (best.empty() || relabeled < best) best = std::move(relabeled);
      return;
    }
    auto [lo, hi] = blocks[at];
    std::sort(order.begin() + lo, order.begin() + hi);
    do {
      permute_blocks(f, order, blocks, at + 1, best);
    } while (std::next_permutation(order.begin() + lo, order.begin() + hi));
  }

  int n_, d_;
  std::int64_t a_, b_;
  std::uint32_t size_;
};

struct StateHash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint16_t x : v) h = (h ^ x) * 0x100000001b3ull;
    return h;
  }
};

}  // namespace

BhsExploreResult bhs_explore(int n, int d, const Rat& alpha, const Rat& beta, int max_repairs,
                             std::uint64_t state_budget) {
  require_valid(n, 1, d, 0);
  std::int64_t scale = std::lcm(alpha.den(), beta.den());
  std::int64_t a = alpha.num() * (scale / alpha.den());
  std::int64_t b = beta.num() * (scale / beta.den());
  PolymatroidExplorer ex(n, d, a, b);

  std::vector<std::int64_t> best(static_cast<std::size_t>(n), INT64_MAX);  // index k-1
  auto absorb = [&](const PolymatroidExplorer::State& f) {
    for (std::uint32_t s = 1; s < ex.size(); ++s) {
      auto& slot = best[static_cast<std::size_t>(std::popcount(s) - 1)];
      slot = std::min<std::int64_t>(slot, f[s]);
    }
  };

  std::unordered_set<PolymatroidExplorer::State, StateHash> seen;
  std::vector<PolymatroidExplorer::State> frontier;
  PolymatroidExplorer::State root = ex.canonical(ex.initial());
  absorb(root);
  seen.insert(root);
  frontier.push_back(std::move(root));

  std::vector<std::uint32_t> helper_sets;
  for_each_subset_of_size(full_mask(n), d, [&](NodeMask m) { helper_sets.push_back(m); });

  for (int depth = 0; depth < max_repairs && !frontier.empty(); ++depth) {
    std::vector<PolymatroidExplorer::State> next;
    for (const auto& f : frontier) {
      for (int slot = 0; slot < n; ++slot) {
        std::uint32_t fbit = 1u << slot;
        for (std::uint32_t h : helper_sets) {
          if (h & fbit) continue;
          PolymatroidExplorer::State c = ex.canonical(ex.child(f, slot, h));
          if (seen.insert(c).second) {
            if (seen.size() > state_budget)
              throw BudgetError("closure exploration exceeded its state budget");
            absorb(c);
            next.push_back(std::move(c));
          }
        }
      }
    }
    frontier = std::move(next);
  }

  BhsExploreResult result;
  result.states = seen.size();
  result.min_by_k.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n - 1; ++k)
    result.min_by_k[static_cast<std::size_t>(k)] = Rat(best[static_cast<std::size_t>(k - 1)], scale);
  return result;
}

}  // namespace lrrc

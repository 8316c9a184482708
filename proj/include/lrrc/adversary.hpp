#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lrrc/ifg.hpp"
#include "lrrc/params.hpp"
#include "lrrc/policies.hpp"

namespace lrrc {

enum class WitnessKind { MSet, Triangle, Tree, NewestNode, FamilyPermutation };

// A failure/unavailability schedule together with the structure it produces
// and the cut it certifies. `cut_value` is the value of the explicit edge cut
// the construction exhibits (an upper bound on the relevant collector
// min-cut); `collector_min_cut` is the exact max-flow value when a full
// k-collector is attached (absent when the distinguished set is smaller
// than k).
struct Witness {
  SystemParams params;
  WitnessKind kind = WitnessKind::MSet;
  std::vector<RepairEvent> events;
  std::vector<int> distinguished;  // ordered by repair time
  NodeMask collector = 0;          // 0 if no full collector exists
  Rat cut_value;
  std::optional<Rat> collector_min_cut;

  FlowGraph replay() const;

  // Text log "tau;F;U;helpers" per event.
  void serialize_events(std::ostream& os) const;
  static std::vector<RepairEvent> parse_events(std::istream& is);
};

// Lemma-style m-set construction: nodes 1..r pinned unavailable, nodes
// r+1..n failed in order under the policy; locates an
// m = ceil((n-r)/(n-d-r))-set among the repaired nodes. cut_value is the
// m-set's direct-cut contribution sum_{i=0}^{m-1} min((d-i) beta, alpha);
// when k <= m a collector on the k oldest members is attached and measured.
Witness build_m_set_witness(const SystemParams& params, const HelperPolicy& policy);

// Constructive break of any stationary table on (5,3,2,1) or (5,4,2,1):
// follows the proof's case split from the (F,U) = (1,{4}) anchor (relabeled
// into proof coordinates), falling back to exhaustive search over short
// schedules. Finds a triangle {x,y,z} (plus w when k = 4) whose collector has
// min-cut exactly min(2 beta, alpha) + min(beta, alpha). Throws
// SearchExhaustedError if nothing is found, which would contradict the
// stationary-insufficiency proposition.
Witness shs_break_search(const ShsTable& table, int k, const Rat& alpha, const Rat& beta,
                         const Rat& file_size = 0);

// Newest-node bound for any dynamic policy on (5,3,2,1)/(5,4,2,1): repairs
// every node once, takes the newest node z with helpers {x,y}; for k = 4
// additionally fails one leftover node with the other unavailable. The
// collector's cut is at most 2 min(2 beta, alpha).
Witness dhs_newest_node_bound(const HelperPolicy& policy, const SystemParams& params);

// 3-tree / 4-tree construction for d = 1 against any policy. m = 3 needs
// r = 1, or r = 0 with n odd; m = 4 needs r = 1 and n mod 3 != 0. The tree's
// root is a repaired node, so the certified cut is min(beta, alpha).
Witness tree_witness(const HelperPolicy& policy, const SystemParams& params, int m);

// Family-scheme upper-bound construction for a family index permutation pi:
// realizes a node sequence p with FI(p_i) = pi_i, fails it in order with the
// last r candidates (in p-order) unavailable each time; the collector on the
// oldest k newcomers has direct cut sum_i min((d-y_i(pi))^+ beta, alpha).
Witness fhs_upper_witness(const SystemParams& params, const std::vector<int>& pi);

// Exact minima over the blind-selection closure explored to a repair depth:
// the state of a growth history is the full vector of min-cut values to every
// subset of active nodes, which the repair update transforms in closed form;
// states are deduplicated up to node relabeling. Returns min over all
// explored graphs of the min-cut over C(n,k) collectors, for every k.
struct BhsExploreResult {
  std::vector<Rat> min_by_k;  // index k, 1..n-1 (index 0 unused)
  std::uint64_t states = 0;   // distinct canonical states visited
};
BhsExploreResult bhs_explore(int n, int d, const Rat& alpha, const Rat& beta, int max_repairs,
                             std::uint64_t state_budget = 20'000'000);

// The staircase schedule attaining the closed form: fails 1..k in order,
// node i helped by {1..i-1} plus the next fresh nodes.
Witness bhs_staircase_witness(const SystemParams& params);

}  // namespace lrrc

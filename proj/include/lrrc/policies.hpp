#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "lrrc/gf2.hpp"
#include "lrrc/ifg.hpp"
#include "lrrc/nodeset.hpp"

namespace lrrc {

// A helper-selection rule: given the repair history so far, the failed node,
// and the currently unavailable set, pick the d helpers. Implementations must
// be deterministic in (history, failed, unavailable) — randomized policies
// carry their seed in their state and derive choices from the history length.
class HelperPolicy {
 public:
  virtual ~HelperPolicy() = default;
  virtual NodeMask decide(RepairHistory history, int failed, NodeMask unavailable) const = 0;
  virtual std::string name() const = 0;
};

// Stationary rule as a total table over (F, U) with |U| = r, F not in U.
class ShsTable {
 public:
  ShsTable(int n, int d, int r) : n_(n), d_(d), r_(r) {}

  int n() const { return n_; }
  int d() const { return d_; }
  int r() const { return r_; }

  void set(int failed, NodeMask unavailable, NodeMask helpers);
  NodeMask lookup(int failed, NodeMask unavailable) const;

  // Every (F, U) pair with |U| = r present and well-formed.
  bool total() const;

  // Text lines "F;U;helpers" with comma-separated sorted indices.
  void serialize(std::ostream& os) const;
  static ShsTable parse(std::istream& is, int n, int d, int r);

  const std::map<std::pair<int, NodeMask>, NodeMask>& entries() const { return entries_; }

 private:
  int n_, d_, r_;
  std::map<std::pair<int, NodeMask>, NodeMask> entries_;
};

// Builds the table D(F,U) = first d available candidates of D_bar(F) by node
// index, from per-node candidate sets of size d+r. When U sits entirely
// inside D_bar(F) this is exactly D_bar(F) \ U.
ShsTable shs_from_candidate_sets(int n, int d, int r, const std::map<int, NodeMask>& candidates);

// Wraps a table as a policy. A query with |U| < r is completed to size r with
// the smallest admissible node indices before the lookup.
class TablePolicy : public HelperPolicy {
 public:
  explicit TablePolicy(ShsTable table, std::string name = "shs-table");
  NodeMask decide(RepairHistory history, int failed, NodeMask unavailable) const override;
  std::string name() const override { return name_; }
  const ShsTable& table() const { return table_; }

 private:
  ShsTable table_;
  std::string name_;
};

// Family partition of the modified family helper selection scheme: complete
// families of size n-d-r in index order, the remaining n mod (n-d-r) nodes as
// an incomplete family; candidate sets D_bar(F) of size d+r.
struct FamilyStructure {
  int n = 0, d = 0, r = 0;
  std::vector<std::vector<int>> complete_families;
  std::vector<int> incomplete_family;           // empty when (n-d-r) | n
  std::vector<int> family_of;                   // 1..n -> family index 1..c, 0 = incomplete
  std::vector<NodeMask> candidates;             // 1..n -> D_bar(F)

  NodeMask candidate_set(int node) const { return candidates[static_cast<std::size_t>(node)]; }
};

FamilyStructure mfhs_build(int n, int d, int r);

// The MFHS rule is stationary; exposed both as a table and as a policy.
ShsTable mfhs_table(const FamilyStructure& fs);

class MfhsPolicy : public HelperPolicy {
 public:
  MfhsPolicy(int n, int d, int r);
  NodeMask decide(RepairHistory history, int failed, NodeMask unavailable) const override;
  std::string name() const override { return "mfhs"; }
  const FamilyStructure& structure() const { return structure_; }

 private:
  FamilyStructure structure_;
  ShsTable table_;
};

// Parent relation derived from a repair history: i is a parent of j iff i
// helped the repair that produced j's current incarnation and i has not been
// repaired since. `artificial` seeds relations that exist before any repair
// (the explicit code's initialization); an artificial edge i -> j dies when
// either endpoint is repaired, like any other.
class ParentRelation {
 public:
  ParentRelation(int n, const std::vector<std::pair<int, int>>& artificial = {});

  void apply(const RepairEvent& e);
  static ParentRelation from_history(int n, RepairHistory history,
                                     const std::vector<std::pair<int, int>>& artificial = {});

  bool is_parent(int i, int j) const { return contains(children_[static_cast<std::size_t>(i)], j); }
  NodeMask children(int i) const { return children_[static_cast<std::size_t>(i)]; }

  // Three nodes x,y,z with x parent of y and z, and y parent of z.
  bool has_triangle() const;

 private:
  int n_;
  std::vector<NodeMask> children_;  // 1..n -> set of current children
};

// Clique-avoiding selection for (5,*,2,1): the lexicographically smallest
// pair of available nodes with no parent relation in either direction. The
// no-triangle invariant guarantees such a pair exists.
NodeMask ca_select(const ParentRelation& parents, int failed, NodeMask unavailable, int n = 5);

// CA as a policy. The artificial initial parents (nodes 1 and 2 parents of
// 3, 4, 5) are part of the scheme's initialization convention.
class CaPolicy : public HelperPolicy {
 public:
  NodeMask decide(RepairHistory history, int failed, NodeMask unavailable) const override;
  std::string name() const override { return "ca"; }
  static std::vector<std::pair<int, int>> artificial_parents();
};

// Uniformly random admissible helper set; deterministic in (seed, history
// length, failed, unavailable).
class RandomPolicy : public HelperPolicy {
 public:
  RandomPolicy(int n, int d, std::uint64_t seed) : n_(n), d_(d), seed_(seed) {}
  NodeMask decide(RepairHistory history, int failed, NodeMask unavailable) const override;
  std::string name() const override { return "random(" + std::to_string(seed_) + ")"; }

 private:
  int n_, d_;
  std::uint64_t seed_;
};

// Appendix-style replica scheme for d = r = 1: groups of 3 (plus up to two
// groups of 4 when k >= 5), one coded packet per group over a 2-packet file,
// repairs served by a surviving same-group replica. Supports up to 3 groups
// (XOR parity); more would need a larger field.
struct DuplicationScheme {
  int n = 0, k = 0;
  std::vector<std::vector<int>> groups;
  std::vector<PacketVector> group_packet;  // dim-2 coefficient vectors
  ShsTable table;

  // A node set reconstructs iff its groups' packets span the 2-dim file.
  bool reconstructs(NodeMask nodes) const;
  Rat alpha_over_m() const { return Rat(1, 2); }
  Rat beta_over_m() const { return Rat(1, 2); }
};

DuplicationScheme duplication_scheme_build(int n, int k);

// Smallest k such that every k-subset reconstructs, by enumeration.
int actual_k_star(const DuplicationScheme& scheme);

}  // namespace lrrc

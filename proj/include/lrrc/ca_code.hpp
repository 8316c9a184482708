#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "lrrc/gf2.hpp"
#include "lrrc/ifg.hpp"
#include "lrrc/policies.hpp"

namespace lrrc {

// State of the explicit binary code for (5,3,2,1)/(5,4,2,1): five nodes, two
// coded packets each over the 4-packet file, plus the parent relation and the
// repair history that produced it. Payloads carry actual data words through
// the same linear combinations, so reconstruction can be checked end to end.
class CAState {
 public:
  struct StoredPacket {
    PacketVector coeffs;     // dim-4 coefficient vector
    std::uint64_t payload;   // XOR of the file words selected by coeffs
  };

  static constexpr int kNodes = 5;
  static constexpr int kFileDim = 4;

  std::array<StoredPacket, 2> node(int i) const { return packets_[static_cast<std::size_t>(i - 1)]; }
  const ParentRelation& parents() const { return parents_; }
  const std::vector<RepairEvent>& history() const { return history_; }
  long tau() const { return static_cast<long>(history_.size()); }
  const std::array<std::uint64_t, 4>& file_words() const { return file_; }

  friend CAState ca_init(const std::array<std::uint64_t, 4>&);
  friend struct CaRepairAccess;

  // Node dump: 5 lines of two coefficient vectors, then the parent edges.
  void dump(std::ostream& os) const;

 private:
  CAState() : parents_(kNodes, CaPolicy::artificial_parents()) {}

  std::array<std::array<StoredPacket, 2>, kNodes> packets_{};
  ParentRelation parents_;
  std::vector<RepairEvent> history_;
  std::array<std::uint64_t, 4> file_{};
};

// Initialization: nodes 1..5 store {X1,X2}, {X3,X4}, {X1,X3}, {X2,X4},
// {X1+X2, X3+X4}; nodes 1 and 2 are artificial parents of 3, 4, and 5.
CAState ca_init(const std::array<std::uint64_t, 4>& file_words = {});

struct CaRepairDetail {
  int helper_b = 0, helper_c = 0;   // helpers, ascending
  int bystander_d = 0, bystander_e = 0;
  PacketVector zb, zc;              // packets sent to the newcomer
};

// One regular repair: clique-avoiding helper choice, then the two-condition
// packet selection. Candidate packets are scanned in lexicographic
// coefficient order, so runs are reproducible. Throws
// InvariantViolationError if no packet qualifies (impossible while the
// induction conditions hold).
CAState ca_repair(const CAState& state, int failed, NodeMask unavailable,
                  CaRepairDetail* detail = nullptr);

// Solves the GF(2) system of the stored vectors of the given nodes. Succeeds
// iff their joint rank is 4, returning the recovered file words.
std::optional<std::array<std::uint64_t, 4>> ca_reconstruct(const CAState& state,
                                                           NodeMask nodes);

// Smallest k such that every k-subset of nodes reconstructs.
int actual_k_star(const CAState& state);

// Induction condition check: parent-related pairs span rank 3, unrelated
// pairs rank 4, over all C(5,2) pairs.
bool ca_rank_dichotomy_holds(const CAState& state);

// Every C(5,3) triple reconstructs.
bool ca_all_triples_reconstruct(const CAState& state);

}  // namespace lrrc

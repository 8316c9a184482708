#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "lrrc/nodeset.hpp"
#include "lrrc/params.hpp"
#include "lrrc/rational.hpp"

namespace lrrc {

// One repair: at stage tau, physical node `failed` was replaced while the
// nodes in `unavailable` could not help; the newcomer pulled beta from each
// node in `helpers`.
struct RepairEvent {
  int tau = 0;
  int failed = 0;
  NodeMask unavailable = 0;
  NodeMask helpers = 0;
};

using RepairHistory = std::span<const RepairEvent>;

// Staged information flow graph. Storage node incarnations are split into an
// input and an output half joined by an alpha-edge; originals are fed by the
// source over edges of unbounded capacity, newcomers by d beta-edges from the
// helper incarnations active at repair time. The graph is append-only:
// superseded incarnations stay as ancestors but never gain new out-edges.
class FlowGraph {
 public:
  struct Incarnation {
    int phys = 0;                // physical node index 1..n
    int stage = 0;               // 0 for originals, repair tau otherwise
    std::vector<int> fed_by;     // incarnation ids of the helpers (empty for originals)
  };

  // Intact network of n originals, empty history.
  static FlowGraph intact(const SystemParams& params);

  // Functional growth: returns the graph extended by one repair. Throws
  // ProtocolViolationError if helpers intersect {F} or U or U contains F or
  // |U| > r, and PreconditionError on a wrong helper count.
  FlowGraph grow_repair(int failed, NodeMask unavailable, NodeMask helpers) const;

  // Replays a whole failure schedule.
  static FlowGraph replay(const SystemParams& params, std::span<const RepairEvent> events);

  const SystemParams& params() const { return params_; }
  const std::vector<Incarnation>& incarnations() const { return incarnations_; }
  const std::vector<RepairEvent>& history() const { return history_; }
  int active_incarnation(int phys) const { return active_[static_cast<std::size_t>(phys)]; }
  int stages() const { return static_cast<int>(history_.size()); }

  // Exact max-flow value from the source to a data collector attached to the
  // active incarnations of the given k physical nodes.
  Rat min_cut(NodeMask collector) const;

  // min over all C(n,k) collectors.
  Rat min_over_collectors() const;

  // Edge list: "from to cap_num cap_den" per line; the source prints as node
  // id -1, in/out halves of incarnation i as 2i and 2i+1.
  void dump_edges(std::ostream& os) const;

 private:
  FlowGraph() = default;

  SystemParams params_;
  std::vector<Incarnation> incarnations_;
  std::vector<int> active_;  // phys (1-based) -> incarnation id
  std::vector<RepairEvent> history_;
};

enum class StructureKind { MSet, MTree };

// Definition checks on a set of active physical nodes. An m-set needs every
// member repaired and an edge from every older member's out-half into every
// younger member's in-half; an m-tree (d = 1 only) needs the members' single
// in-edges to come from earlier members. Throws PreconditionError for an
// m-tree query with d != 1.
bool structure_check(const FlowGraph& g, const std::vector<int>& nodes, StructureKind kind);

}  // namespace lrrc

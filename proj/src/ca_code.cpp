#include "lrrc/ca_code.hpp"

#include <algorithm>
#include <ostream>

#include "lrrc/errors.hpp"

namespace lrrc {

namespace {

constexpr int kDim = CAState::kFileDim;

std::uint64_t payload_of(std::uint32_t coeffs, const std::array<std::uint64_t, 4>& file) {
  std::uint64_t p = 0;
  for (int i = 0; i < kDim; ++i)
    if ((coeffs >> i) & 1) p ^= file[static_cast<std::size_t>(i)];
  return p;
}

// The three nonzero packets a node can send, in lexicographic coefficient
// order.
std::array<PacketVector, 3> send_candidates(const std::array<CAState::StoredPacket, 2>& stored) {
  std::array<PacketVector, 3> c = {stored[0].coeffs, stored[1].coeffs,
                                   stored[0].coeffs ^ stored[1].coeffs};
  std::sort(c.begin(), c.end(), lex_less);
  return c;
}

SubspaceBasis node_span(const std::array<CAState::StoredPacket, 2>& stored) {
  SubspaceBasis b(kDim);
  b.insert(stored[0].coeffs);
  b.insert(stored[1].coeffs);
  return b;
}

}  // namespace

struct CaRepairAccess {
  static std::array<std::array<CAState::StoredPacket, 2>, CAState::kNodes>& packets(CAState& s) {
    return s.packets_;
  }
  static ParentRelation& parents(CAState& s) { return s.parents_; }
  static std::vector<RepairEvent>& history(CAState& s) { return s.history_; }
  static std::array<std::uint64_t, 4>& file(CAState& s) { return s.file_; }
};

CAState ca_init(const std::array<std::uint64_t, 4>& file_words) {
  CAState s;
  CaRepairAccess::file(s) = file_words;
  const std::uint32_t layout[CAState::kNodes][2] = {
      {0b0001, 0b0010},  // node 1: X1, X2
      {0b0100, 0b1000},  // node 2: X3, X4
      {0b0001, 0b0100},  // node 3: X1, X3
      {0b0010, 0b1000},  // node 4: X2, X4
      {0b0011, 0b1100},  // node 5: X1+X2, X3+X4
  };
  auto& packets = CaRepairAccess::packets(s);
  for (int node = 0; node < CAState::kNodes; ++node)
    for (int j = 0; j < 2; ++j) {
      std::uint32_t bits = layout[node][j];
      packets[static_cast<std::size_t>(node)][static_cast<std::size_t>(j)] = {
          packet(bits, kDim), payload_of(bits, file_words)};
    }
  return s;
}

CAState ca_repair(const CAState& state, int failed, NodeMask unavailable,
                  CaRepairDetail* detail) {
  if (failed < 1 || failed > CAState::kNodes) throw PreconditionError("failed node out of range");
  if (contains(unavailable, failed)) throw ProtocolViolationError("failed node inside U");
  if (set_size(unavailable) > 1) throw ProtocolViolationError("|U| <= 1 for this code");

  NodeMask helpers = ca_select(state.parents(), failed, unavailable, CAState::kNodes);
  auto hs = to_nodes(helpers);
  int b = hs[0], c = hs[1];
  auto bystanders = to_nodes(full_mask(CAState::kNodes) & ~(helpers | node_bit(failed)));
  int d = bystanders[0], e = bystanders[1];

  SubspaceBasis span_b = node_span(state.node(b));
  SubspaceBasis span_c = node_span(state.node(c));
  SubspaceBasis span_d = node_span(state.node(d));
  SubspaceBasis span_e = node_span(state.node(e));

  // First packet: avoid S1 (D, or C+D when that sum is deficient) and the
  // analogous S2 built from E.
  SubspaceBasis s1 = sum_space(span_c, span_d).rank() == 4 ? span_d : sum_space(span_c, span_d);
  SubspaceBasis s2 = sum_space(span_c, span_e).rank() == 4 ? span_e : sum_space(span_c, span_e);

  PacketVector vb;
  bool found = false;
  for (const PacketVector& cand : send_candidates(state.node(b)))
    if (!in_span(cand, s1) && !in_span(cand, s2)) {
      vb = cand;
      found = true;
      break;
    }
  if (!found) throw InvariantViolationError("no eligible first repair packet");

  SubspaceBasis vb_d = span_d;
  vb_d.insert(vb);
  SubspaceBasis vb_e = span_e;
  vb_e.insert(vb);

  PacketVector vc;
  found = false;
  for (const PacketVector& cand : send_candidates(state.node(c)))
    if (!in_span(cand, vb_d) && !in_span(cand, vb_e)) {
      vc = cand;
      found = true;
      break;
    }
  if (!found) throw InvariantViolationError("no eligible second repair packet");

  CAState next = state;
  auto& packets = CaRepairAccess::packets(next);
  packets[static_cast<std::size_t>(failed - 1)] = {
      CAState::StoredPacket{vb, payload_of(vb.bits, state.file_words())},
      CAState::StoredPacket{vc, payload_of(vc.bits, state.file_words())}};
  RepairEvent event{static_cast<int>(state.history().size()) + 1, failed, unavailable, helpers};
  CaRepairAccess::parents(next).apply(event);
  CaRepairAccess::history(next).push_back(event);

  if (detail) *detail = {b, c, d, e, vb, vc};
  return next;
}

std::optional<std::array<std::uint64_t, 4>> ca_reconstruct(const CAState& state, NodeMask nodes) {
  // Gaussian elimination on [coeffs | payload] rows.
  struct Row {
    std::uint32_t coeffs;
    std::uint64_t payload;
  };
  std::vector<Row> rows;
  for (int node : to_nodes(nodes)) {
    if (node < 1 || node > CAState::kNodes) throw PreconditionError("node out of range");
    for (const auto& p : state.node(node)) rows.push_back({p.coeffs.bits, p.payload});
  }

  std::array<std::optional<Row>, 4> pivot_rows;
  for (Row row : rows) {
    for (int bit = 0; bit < kDim && row.coeffs != 0; ++bit) {
      if (!((row.coeffs >> bit) & 1)) continue;
      if (!pivot_rows[static_cast<std::size_t>(bit)]) {
        pivot_rows[static_cast<std::size_t>(bit)] = row;
        break;
      }
      row.coeffs ^= pivot_rows[static_cast<std::size_t>(bit)]->coeffs;
      row.payload ^= pivot_rows[static_cast<std::size_t>(bit)]->payload;
    }
  }
  for (const auto& p : pivot_rows)
    if (!p) return std::nullopt;

  // Back-substitute to unit vectors.
  std::array<std::uint64_t, 4> file{};
  for (int i = kDim - 1; i >= 0; --i) {
    Row row = *pivot_rows[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < kDim; ++j)
      if ((row.coeffs >> j) & 1) {
        row.coeffs ^= std::uint32_t{1} << j;
        row.payload ^= file[static_cast<std::size_t>(j)];
      }
    file[static_cast<std::size_t>(i)] = row.payload;
  }
  return file;
}

int actual_k_star(const CAState& state) {
  for (int k = 1; k <= CAState::kNodes; ++k) {
    bool all = true;
    for_each_subset_of_size(full_mask(CAState::kNodes), k, [&](NodeMask subset) {
      if (!ca_reconstruct(state, subset)) all = false;
    });
    if (all) return k;
  }
  return CAState::kNodes + 1;
}

bool ca_rank_dichotomy_holds(const CAState& state) {
  for (int i = 1; i <= CAState::kNodes; ++i)
    for (int j = i + 1; j <= CAState::kNodes; ++j) {
      SubspaceBasis joint = sum_space(node_span(state.node(i)), node_span(state.node(j)));
      bool related = state.parents().is_parent(i, j) || state.parents().is_parent(j, i);
      if (joint.rank() != (related ? 3 : 4)) return false;
    }
  return true;
}

bool ca_all_triples_reconstruct(const CAState& state) {
  bool ok = true;
  for_each_subset_of_size(full_mask(CAState::kNodes), 3, [&](NodeMask t) {
    if (!ca_reconstruct(state, t)) ok = false;
  });
  return ok;
}

void CAState::dump(std::ostream& os) const {
  auto bits_str = [](const PacketVector& v) {
    std::string s;
    for (int i = 0; i < kDim; ++i) s += ((v.bits >> i) & 1) ? '1' : '0';
    return s;
  };
  for (int node = 1; node <= kNodes; ++node) {
    auto stored = this->node(node);
    os << node << ' ' << bits_str(stored[0].coeffs) << ' ' << bits_str(stored[1].coeffs) << '\n';
  }
  for (int i = 1; i <= kNodes; ++i)
    for (int j : to_nodes(parents_.children(i))) os << "parent " << i << ' ' << j << '\n';
}

}  // namespace lrrc

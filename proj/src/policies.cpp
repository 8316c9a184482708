#include "lrrc/policies.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "lrrc/errors.hpp"

namespace lrrc {

void ShsTable::set(int failed, NodeMask unavailable, NodeMask helpers) {
  if (failed < 1 || failed > n_ || contains(unavailable, failed))
    throw ConstructionError("table entry with F out of range or inside U");
  if (set_size(unavailable) != r_) throw ConstructionError("table entry needs |U| = r");
  if (set_size(helpers) != d_) throw ConstructionError("table entry needs |D| = d");
  if ((helpers & (unavailable | node_bit(failed))) != 0)
    throw ConstructionError("table helpers overlap F or U");
  entries_[{failed, unavailable}] = helpers;
}

NodeMask ShsTable::lookup(int failed, NodeMask unavailable) const {
  auto it = entries_.find({failed, unavailable});
  if (it == entries_.end()) throw PreconditionError("no table entry for this (F,U)");
  return it->second;
}

bool ShsTable::total() const {
  std::size_t expected = 0;
  for (int f = 1; f <= n_; ++f) {
    std::size_t count = 0;
    for_each_subset_of_size(full_mask(n_) & ~node_bit(f), r_, [&](NodeMask) { ++count; });
    expected += count;
  }
  return entries_.size() == expected;
}

void ShsTable::serialize(std::ostream& os) const {
  for (const auto& [key, helpers] : entries_)
    os << key.first << ';' << mask_str(key.second) << ';' << mask_str(helpers) << '\n';
}

ShsTable ShsTable::parse(std::istream& is, int n, int d, int r) {
  ShsTable t(n, d, r);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    auto p1 = line.find(';');
    auto p2 = line.find(';', p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw ConstructionError("malformed table line: " + line);
    t.set(std::stoi(line.substr(0, p1)), mask_parse(line.substr(p1 + 1, p2 - p1 - 1)),
          mask_parse(line.substr(p2 + 1)));
  }
  return t;
}

namespace {

NodeMask first_by_index(NodeMask candidates, int count) {
  NodeMask out = 0;
  for (int node : to_nodes(candidates)) {
    if (count == 0) break;
    out |= node_bit(node);
    --count;
  }
  if (count != 0) throw ConstructionError("not enough candidates to pick from");
  return out;
}

}  // namespace

ShsTable shs_from_candidate_sets(int n, int d, int r,
                                 const std::map<int, NodeMask>& candidates) {
  ShsTable table(n, d, r);
  for (int f = 1; f <= n; ++f) {
    auto it = candidates.find(f);
    if (it == candidates.end()) throw ConstructionError("missing candidate set");
    NodeMask cand = it->second;
    if (set_size(cand) != d + r || contains(cand, f))
      throw ConstructionError("candidate set must have d+r nodes and exclude F");
    for_each_subset_of_size(full_mask(n) & ~node_bit(f), r, [&](NodeMask u) {
      NodeMask available = cand & ~u;
      table.set(f, u, first_by_index(available, d));
    });
  }
  return table;
}

TablePolicy::TablePolicy(ShsTable table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {}

NodeMask TablePolicy::decide(RepairHistory, int failed, NodeMask unavailable) const {
  NodeMask u = unavailable;
  // Adversarial completion of an undersized U: smallest admissible indices.
  for (int node = 1; set_size(u) < table_.r(); ++node) {
    if (node > table_.n()) throw PreconditionError("cannot complete U to size r");
    if (node != failed && !contains(u, node)) u |= node_bit(node);
  }
  return table_.lookup(failed, u);
}

FamilyStructure mfhs_build(int n, int d, int r) {
  require_valid(n, 1, d, r);
  FamilyStructure fs;
  fs.n = n;
  fs.d = d;
  fs.r = r;
  int size = n - d - r;
  int complete = n / size;
  fs.family_of.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int c = 0; c < complete; ++c) {
    std::vector<int> family;
    for (int i = c * size + 1; i <= (c + 1) * size; ++i) {
      family.push_back(i);
      fs.family_of[static_cast<std::size_t>(i)] = c + 1;
    }
    fs.complete_families.push_back(std::move(family));
  }
  for (int i = complete * size + 1; i <= n; ++i) fs.incomplete_family.push_back(i);

  fs.candidates.assign(static_cast<std::size_t>(n) + 1, 0);
  NodeMask first_dr = first_by_index(full_mask(n), d + r);
  for (int i = 1; i <= n; ++i) {
    int fam = fs.family_of[static_cast<std::size_t>(i)];
    if (fam == 0) {
      fs.candidates[static_cast<std::size_t>(i)] = first_dr;
    } else {
      NodeMask family_mask = mask_of(fs.complete_families[static_cast<std::size_t>(fam - 1)]);
      fs.candidates[static_cast<std::size_t>(i)] = full_mask(n) & ~family_mask;
    }
  }
  return fs;
}

ShsTable mfhs_table(const FamilyStructure& fs) {
  std::map<int, NodeMask> candidates;
  for (int i = 1; i <= fs.n; ++i) candidates[i] = fs.candidate_set(i);
  return shs_from_candidate_sets(fs.n, fs.d, fs.r, candidates);
}

MfhsPolicy::MfhsPolicy(int n, int d, int r)
    : structure_(mfhs_build(n, d, r)), table_(mfhs_table(structure_)) {}

NodeMask MfhsPolicy::decide(RepairHistory, int failed, NodeMask unavailable) const {
  // Same rule as the table, but valid for any |U| <= r directly.
  NodeMask available = structure_.candidate_set(failed) & ~unavailable;
  return first_by_index(available, structure_.d);
}

ParentRelation::ParentRelation(int n, const std::vector<std::pair<int, int>>& artificial)
    : n_(n), children_(static_cast<std::size_t>(n) + 1, 0) {
  for (auto [parent, child] : artificial) children_[static_cast<std::size_t>(parent)] |= node_bit(child);
}

void ParentRelation::apply(const RepairEvent& e) {
  // The newcomer stops being a parent, loses its old parents, and gains its
  // helpers as parents.
  for (int i = 1; i <= n_; ++i) children_[static_cast<std::size_t>(i)] &= ~node_bit(e.failed);
  children_[static_cast<std::size_t>(e.failed)] = 0;
  for (int h : to_nodes(e.helpers)) children_[static_cast<std::size_t>(h)] |= node_bit(e.failed);
}

ParentRelation ParentRelation::from_history(int n, RepairHistory history,
                                            const std::vector<std::pair<int, int>>& artificial) {
  ParentRelation rel(n, artificial);
  for (const auto& e : history) rel.apply(e);
  return rel;
}

bool ParentRelation::has_triangle() const {
  for (int x = 1; x <= n_; ++x)
    for (int y : to_nodes(children_[static_cast<std::size_t>(x)]))
      if ((children_[static_cast<std::size_t>(x)] & children_[static_cast<std::size_t>(y)]) != 0)
        return true;
  return false;
}

NodeMask ca_select(const ParentRelation& parents, int failed, NodeMask unavailable, int n) {
  NodeMask available = full_mask(n) & ~(node_bit(failed) | unavailable);
  std::vector<int> nodes = to_nodes(available);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      int x = nodes[i], y = nodes[j];
      if (!parents.is_parent(x, y) && !parents.is_parent(y, x))
        return node_bit(x) | node_bit(y);
    }
  // Unreachable while the no-triangle invariant holds: among any three
  // available nodes some pair is unrelated.
  throw InvariantViolationError("clique-avoiding selection found no eligible pair");
}

std::vector<std::pair<int, int>> CaPolicy::artificial_parents() {
  return {{1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}};
}

NodeMask CaPolicy::decide(RepairHistory history, int failed, NodeMask unavailable) const {
  auto rel = ParentRelation::from_history(5, history, artificial_parents());
  return ca_select(rel, failed, unavailable, 5);
}

NodeMask RandomPolicy::decide(RepairHistory history, int failed, NodeMask unavailable) const {
  std::seed_seq seq{seed_, static_cast<std::uint64_t>(history.size()),
                    static_cast<std::uint64_t>(failed), static_cast<std::uint64_t>(unavailable)};
  std::mt19937_64 rng(seq);
  std::vector<int> pool = to_nodes(full_mask(n_) & ~(node_bit(failed) | unavailable));
  NodeMask out = 0;
  for (int picked = 0; picked < d_; ++picked) {
    std::uniform_int_distribution<std::size_t> dist(0, pool.size() - 1);
    std::size_t at = dist(rng);
    out |= node_bit(pool[at]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return out;
}

bool DuplicationScheme::reconstructs(NodeMask nodes) const {
  SubspaceBasis joint(2);
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (int member : groups[g])
      if (contains(nodes, member)) joint.insert(group_packet[g]);
  return joint.rank() == 2;
}

DuplicationScheme duplication_scheme_build(int n, int k) {
  bool supported = (k == 4 && n % 3 == 0) || k >= 5;
  if (!supported || !params_ok(n, k, 1, 1))
    throw PreconditionError("duplication scheme needs d = r = 1 and (k = 4 with 3 | n, or k >= 5)");

  DuplicationScheme s{n, k, {}, {}, ShsTable(n, 1, 1)};
  int groups_of_4 = (k >= 5) ? n % 3 : 0;
  int group_count = n / 3;
  if (group_count > 3)
    throw ConstructionError("more than 3 groups would need a non-binary parity code");

  int next = 1;
  for (int g = 0; g < group_count; ++g) {
    int size = (g < group_count - groups_of_4) ? 3 : 4;
    std::vector<int> group;
    for (int i = 0; i < size; ++i) group.push_back(next++);
    s.groups.push_back(std::move(group));
  }

  // (group_count, 2) code over GF(2): X1, X2, then the XOR parity.
  const std::uint32_t codewords[3] = {0b01, 0b10, 0b11};
  for (int g = 0; g < group_count; ++g) s.group_packet.push_back(packet(codewords[g], 2));

  for (int f = 1; f <= n; ++f) {
    NodeMask same_group = 0;
    for (const auto& group : s.groups)
      if (std::find(group.begin(), group.end(), f) != group.end()) same_group = mask_of(group);
    for_each_subset_of_size(full_mask(n) & ~node_bit(f), 1, [&](NodeMask u) {
      NodeMask survivors = same_group & ~(u | node_bit(f));
      s.table.set(f, u, first_by_index(survivors, 1));
    });
  }
  return s;
}

int actual_k_star(const DuplicationScheme& scheme) {
  for (int k = 1; k <= scheme.n; ++k) {
    bool all = true;
    for_each_subset_of_size(full_mask(scheme.n), k, [&](NodeMask subset) {
      if (!scheme.reconstructs(subset)) all = false;
    });
    if (all) return k;
  }
  return scheme.n + 1;
}

}  // namespace lrrc

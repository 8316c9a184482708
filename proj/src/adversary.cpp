#include "lrrc/adversary.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>

#include "lrrc/errors.hpp"
#include "lrrc/family.hpp"

namespace lrrc {

FlowGraph Witness::replay() const { return FlowGraph::replay(params, events); }

void Witness::serialize_events(std::ostream& os) const {
  for (const auto& e : events)
    os << e.tau << ';' << e.failed << ';' << mask_str(e.unavailable) << ';'
       << mask_str(e.helpers) << '\n';
}

std::vector<RepairEvent> Witness::parse_events(std::istream& is) {
  std::vector<RepairEvent> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::array<std::string, 4> field;
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
      auto semi = i == 3 ? line.size() : line.find(';', pos);
      if (semi == std::string::npos) throw ConstructionError("malformed witness line: " + line);
      field[static_cast<std::size_t>(i)] = line.substr(pos, semi - pos);
      pos = semi + 1;
    }
    out.push_back({std::stoi(field[0]), std::stoi(field[1]), mask_parse(field[2]),
                   mask_parse(field[3])});
  }
  return out;
}

namespace {

int ceil_div(int a, int b) { return (a + b - 1) / b; }

// Members of `nodes` sorted by the repair stage of their current incarnation.
std::vector<int> by_repair_order(const FlowGraph& g, std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
    return g.incarnations()[static_cast<std::size_t>(g.active_incarnation(a))].stage <
           g.incarnations()[static_cast<std::size_t>(g.active_incarnation(b))].stage;
  });
  return nodes;
}

// Direct-cut contribution of an ordered structure: member i is charged
// min((d - e_i) beta, alpha) where e_i counts its in-edges arriving from the
// current incarnations of earlier members.
Rat direct_cut_value(const FlowGraph& g, const std::vector<int>& ordered) {
  Rat total = 0;
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    const auto& inc =
        g.incarnations()[static_cast<std::size_t>(g.active_incarnation(ordered[i]))];
    if (inc.stage == 0) {
      total += g.params().alpha;  // originals can only be cut at their storage edge
      continue;
    }
    int from_earlier = 0;
    for (std::size_t j = 0; j < i; ++j) {
      int earlier = g.active_incarnation(ordered[j]);
      from_earlier += static_cast<int>(
          std::count(inc.fed_by.begin(), inc.fed_by.end(), earlier));
    }
    int crossing = std::max(g.params().d - from_earlier, 0);
    total += min(Rat(crossing) * g.params().beta, g.params().alpha);
  }
  return total;
}

}  // namespace

Witness build_m_set_witness(const SystemParams& params, const HelperPolicy& policy) {
  require_valid(params);
  NodeMask pinned = 0;
  for (int i = 1; i <= params.r; ++i) pinned |= node_bit(i);

  FlowGraph g = FlowGraph::intact(params);
  for (int f = params.r + 1; f <= params.n; ++f) {
    NodeMask helpers = policy.decide(g.history(), f, pinned);
    g = g.grow_repair(f, pinned, helpers);
  }

  int m = ceil_div(params.n - params.r, params.n - params.d - params.r);
  NodeMask repaired = full_mask(params.n) & ~pinned;
  std::vector<int> found;
  for_each_subset_of_size(repaired, m, [&](NodeMask subset) {
    if (!found.empty()) return;
    std::vector<int> nodes = to_nodes(subset);
    if (structure_check(g, nodes, StructureKind::MSet)) found = by_repair_order(g, nodes);
  });
  if (found.empty())
    throw InvariantViolationError("no m-set after the pinned-unavailable schedule");

  Witness w;
  w.params = params;
  w.kind = WitnessKind::MSet;
  w.events = g.history();
  w.distinguished = found;
  w.cut_value = direct_cut_value(g, found);
  if (params.k <= m) {
    std::vector<int> oldest(found.begin(), found.begin() + params.k);
    w.collector = mask_of(oldest);
    w.collector_min_cut = g.min_cut(w.collector);
  }
  return w;
}

Witness dhs_newest_node_bound(const HelperPolicy& policy, const SystemParams& params) {
  if (params.n != 5 || params.d != 2 || params.r != 1 || (params.k != 3 && params.k != 4))
    throw PreconditionError("newest-node bound targets (5,3,2,1) and (5,4,2,1)");

  FlowGraph g = FlowGraph::intact(params);
  for (int f = 1; f <= params.n; ++f) g = g.grow_repair(f, 0, policy.decide(g.history(), f, 0));

  int newest = params.n;
  NodeMask xy = g.history().back().helpers;
  std::vector<int> distinguished = by_repair_order(g, to_nodes(xy));
  distinguished.push_back(newest);
  NodeMask collector = xy | node_bit(newest);

  if (params.k == 4) {
    std::vector<int> leftover = to_nodes(full_mask(params.n) & ~collector);
    int w_node = leftover[0], u_node = leftover[1];
    NodeMask helpers = policy.decide(g.history(), w_node, node_bit(u_node));
    g = g.grow_repair(w_node, node_bit(u_node), helpers);
    distinguished.push_back(w_node);
    collector |= node_bit(w_node);
  }

  Witness w;
  w.params = params;
  w.kind = WitnessKind::NewestNode;
  w.events = g.history();
  w.distinguished = distinguished;
  w.cut_value = Rat(2) * min(Rat(2) * params.beta, params.alpha);
  w.collector = collector;
  w.collector_min_cut = g.min_cut(collector);
  return w;
}

namespace {

struct ProofCoords {
  std::array<int, 6> to_actual{};  // index 1..5

  int fwd(int proof_node) const { return to_actual[static_cast<std::size_t>(proof_node)]; }
  NodeMask fwd_mask(NodeMask proof_mask) const {
    NodeMask m = 0;
    for (int p : to_nodes(proof_mask)) m |= node_bit(fwd(p));
    return m;
  }
  NodeMask back_mask(NodeMask actual_mask) const {
    NodeMask m = 0;
    for (int p = 1; p <= 5; ++p)
      if (contains(actual_mask, fwd(p))) m |= node_bit(p);
    return m;
  }
};

// Anchor at (F,U) = (1,{4}): relabel so that D(1,{4}) reads {2,3} in proof
// coordinates, the leftover node reads 5.
ProofCoords anchor_coords(const ShsTable& table) {
  ProofCoords pc;
  pc.to_actual[1] = 1;
  pc.to_actual[4] = 4;
  std::vector<int> helpers = to_nodes(table.lookup(1, node_bit(4)));
  pc.to_actual[2] = helpers[0];
  pc.to_actual[3] = helpers[1];
  NodeMask used = node_bit(1) | node_bit(4) | node_bit(helpers[0]) | node_bit(helpers[1]);
  pc.to_actual[5] = to_nodes(full_mask(5) & ~used)[0];
  return pc;
}

struct TriangleFind {
  std::vector<RepairEvent> events;
  std::array<int, 3> xyz{};  // actual node ids, oldest first
};

// The proof's Case 1 / Case 2 schedule, executed in proof coordinates.
TriangleFind proof_case_schedule(const ShsTable& table, const SystemParams& params) {
  ProofCoords pc = anchor_coords(table);
  auto lookup = [&](int f, int u) {
    return pc.back_mask(table.lookup(pc.fwd(f), node_bit(pc.fwd(u))));
  };

  // Each row: {F, U} in proof coordinates; the triangle follows the case.
  std::vector<std::pair<int, int>> schedule;
  std::array<int, 3> tri{};
  NodeMask d21 = lookup(2, 1);
  NodeMask d24 = lookup(2, 4);
  if (d21 != mask_of({4, 5})) {  // Case 1.1: node 3 must help node 2
    schedule = {{3, 1}, {2, 1}, {1, 4}};
    tri = {3, 2, 1};
  } else if (d24 != mask_of({1, 5})) {  // Case 1.2
    schedule = {{3, 1}, {2, 4}, {1, 4}};
    tri = {3, 2, 1};
  } else {
    NodeMask d13 = lookup(1, 3);
    if (d13 != mask_of({4, 5})) {  // Case 2.1: D(1,{3}) = {2,v}
      int v = to_nodes(d13 & ~node_bit(2))[0];
      schedule = {{v, 1}, {2, 1}, {1, 3}};
      tri = {v, 2, 1};
    } else {  // Case 2.2
      schedule = {{5, 1}, {1, 3}, {2, 4}};
      tri = {5, 1, 2};
    }
  }

  FlowGraph g = FlowGraph::intact(params);
  for (auto [f, u] : schedule) {
    int failed = pc.fwd(f);
    NodeMask unavailable = node_bit(pc.fwd(u));
    g = g.grow_repair(failed, unavailable, table.lookup(failed, unavailable));
  }
  TriangleFind out;
  out.events = g.history();
  out.xyz = {pc.fwd(tri[0]), pc.fwd(tri[1]), pc.fwd(tri[2])};
  return out;
}

// Depth-limited exhaustive fallback over (F, singleton U) schedules.
bool exhaustive_triangle(const ShsTable& table, const SystemParams& params, int depth,
                         FlowGraph g, TriangleFind& out) {
  bool found = false;
  for_each_subset_of_size(full_mask(5), 3, [&](NodeMask t) {
    if (found) return;
    std::vector<int> nodes = to_nodes(t);
    if (structure_check(g, nodes, StructureKind::MSet)) {
      out.events = g.history();
      auto ordered = by_repair_order(g, nodes);
      out.xyz = {ordered[0], ordered[1], ordered[2]};
      found = true;
    }
  });
  if (found) return true;
  if (depth == 0) return false;
  for (int f = 1; f <= 5; ++f)
    for (int u = 1; u <= 5; ++u) {
      if (u == f) continue;
      NodeMask unavailable = node_bit(u);
      FlowGraph next = g.grow_repair(f, unavailable, table.lookup(f, unavailable));
      if (exhaustive_triangle(table, params, depth - 1, next, out)) return true;
    }
  return false;
}

}  // namespace

Witness shs_break_search(const ShsTable& table, int k, const Rat& alpha, const Rat& beta,
                         const Rat& file_size) {
  if (table.n() != 5 || table.d() != 2 || table.r() != 1 || (k != 3 && k != 4))
    throw PreconditionError("stationary break search targets (5,3,2,1) and (5,4,2,1)");
  if (!table.total()) throw PreconditionError("table must be total over (F,U)");

  SystemParams params{5, k, 2, 1, alpha, beta, file_size};

  TriangleFind find = proof_case_schedule(table, params);
  FlowGraph g = FlowGraph::replay(params, find.events);
  std::vector<int> tri = {find.xyz[0], find.xyz[1], find.xyz[2]};
  if (!structure_check(g, tri, StructureKind::MSet)) {
    // The cases are proof-complete; this path exists as a safety net.
    TriangleFind fallback;
    if (!exhaustive_triangle(table, params, 4, FlowGraph::intact(params), fallback))
      throw SearchExhaustedError(
          "no triangle within the schedule bound: contradicts the stationary-selection bound");
    find = fallback;
    g = FlowGraph::replay(params, find.events);
    tri = {find.xyz[0], find.xyz[1], find.xyz[2]};
  }

  std::vector<int> distinguished = tri;
  NodeMask collector = mask_of(tri);
  if (k == 4) {
    std::vector<int> leftover = to_nodes(full_mask(5) & ~collector);
    int w_node = leftover[0], u_node = leftover[1];
    NodeMask unavailable = node_bit(u_node);
    g = g.grow_repair(w_node, unavailable, table.lookup(w_node, unavailable));
    distinguished.push_back(w_node);
    collector |= node_bit(w_node);
  }

  Witness w;
  w.params = params;
  w.kind = WitnessKind::Triangle;
  w.events = g.history();
  w.distinguished = distinguished;
  w.cut_value = min(Rat(2) * beta, alpha) + min(beta, alpha);
  w.collector = collector;
  w.collector_min_cut = g.min_cut(collector);
  return w;
}

namespace {

struct TreeSearch {
  FlowGraph g;
  std::vector<std::vector<int>> components;  // 2-sets and 3-trees, repair-ordered

  explicit TreeSearch(const SystemParams& params) : g(FlowGraph::intact(params)) {}

  int repair(const HelperPolicy& policy, int failed, NodeMask unavailable) {
    NodeMask helpers = policy.decide(g.history(), failed, unavailable);
    g = g.grow_repair(failed, unavailable, helpers);
    return to_nodes(helpers)[0];  // d = 1
  }

  std::vector<int>* component_of(int node) {
    for (auto& comp : components)
      if (std::find(comp.begin(), comp.end(), node) != comp.end()) return &comp;
    return nullptr;
  }
};

}  // namespace

Witness tree_witness(const HelperPolicy& policy, const SystemParams& params, int m) {
  require_valid(params);
  if (params.d != 1 || (m != 3 && m != 4)) throw PreconditionError("tree witness needs d = 1, m in {3,4}");
  if (m == 3 && !(params.r == 1 || (params.r == 0 && params.n % 2 == 1)))
    throw PreconditionError("3-tree construction needs r = 1, or r = 0 with n odd");
  if (m == 4 && !(params.r == 1 && params.n % 3 != 0))
    throw PreconditionError("4-tree construction needs r = 1 and n mod 3 != 0");

  TreeSearch ts(params);
  const int n = params.n;
  for (int f = 1; f <= n; ++f) ts.repair(policy, f, 0);  // roots must be repaired nodes

  std::vector<int> tree;
  if (m == 3) {
    NodeMask covered = 0;
    while (tree.empty()) {
      std::vector<int> remaining = to_nodes(full_mask(n) & ~covered);
      int failed = remaining.front();
      NodeMask unavailable = 0;
      if (remaining.size() == 2) unavailable = node_bit(remaining.back());
      int helper = ts.repair(policy, failed, unavailable);
      if (auto* comp = ts.component_of(helper)) {
        tree = {(*comp)[0], (*comp)[1], failed};
      } else if (remaining.size() <= 2) {
        throw InvariantViolationError("forced round helper outside all pairs");
      } else {
        ts.components.push_back({helper, failed});
        covered |= node_bit(helper) | node_bit(failed);
      }
    }
  } else {
    // Phase 1: partition everything into 2-sets and 3-trees.
    NodeMask covered = 0;
    while (covered != full_mask(n) && tree.empty()) {
      int failed = to_nodes(full_mask(n) & ~covered).front();
      int helper = ts.repair(policy, failed, 0);
      if (auto* comp = ts.component_of(helper)) {
        comp->push_back(failed);
        covered |= node_bit(failed);
        if (comp->size() == 4) tree = *comp;
      } else {
        ts.components.push_back({helper, failed});
        covered |= node_bit(helper) | node_bit(failed);
      }
    }
    // Phase 2: dissolve 2-sets until a newcomer lands on a 3-tree.
    int rounds_left = n + 2;
    while (tree.empty()) {
      auto pair_it = std::find_if(ts.components.begin(), ts.components.end(),
                                  [](const std::vector<int>& c) { return c.size() == 2; });
      if (pair_it == ts.components.end() || rounds_left-- <= 0)
        throw InvariantViolationError("2-sets exhausted without a 4-tree (n mod 3 != 0 violated?)");
      int v = (*pair_it)[0], w = (*pair_it)[1];
      ts.components.erase(pair_it);

      int helper_w = ts.repair(policy, w, node_bit(v));
      auto* comp_w = ts.component_of(helper_w);
      if (comp_w == nullptr) throw InvariantViolationError("phase-2 helper outside all components");
      comp_w->push_back(w);
      if (comp_w->size() == 4) {
        tree = *comp_w;
        break;
      }

      int helper_v = ts.repair(policy, v, 0);
      auto* comp_v = ts.component_of(helper_v);
      if (comp_v == nullptr) throw InvariantViolationError("phase-2 helper outside all components");
      comp_v->push_back(v);
      if (comp_v->size() == 4) tree = *comp_v;
    }
  }

  if (!structure_check(ts.g, tree, StructureKind::MTree))
    throw InvariantViolationError("constructed node set fails the m-tree check");

  Witness w;
  w.params = params;
  w.kind = WitnessKind::Tree;
  w.events = ts.g.history();
  w.distinguished = tree;
  w.cut_value = direct_cut_value(ts.g, tree);
  if (params.k <= m) {
    std::vector<int> prefix(tree.begin(), tree.begin() + params.k);
    w.collector = mask_of(prefix);
    w.collector_min_cut = ts.g.min_cut(w.collector);
  }
  return w;
}

Witness fhs_upper_witness(const SystemParams& params, const std::vector<int>& pi) {
  require_valid(params);
  FamilyStructure fs = mfhs_build(params.n, params.d, params.r);
  std::vector<int> entries = family_index_vector(params.n, params.d, params.r).entries;

  // pi must permute the family index vector's multiset.
  std::vector<int> a = entries, b = pi;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw ConstructionError("pi is not a permutation of the family index vector");

  // Realize a distinct-node sequence transcribing to pi: smallest unused node
  // with the matching signed family index.
  std::vector<int> p;
  NodeMask used = 0;
  for (int want : pi) {
    int chosen = 0;
    for (int node = 1; node <= params.n && chosen == 0; ++node)
      if (!contains(used, node) && entries[static_cast<std::size_t>(node - 1)] == want)
        chosen = node;
    if (chosen == 0) throw ConstructionError("cannot realize pi as a node sequence");
    used |= node_bit(chosen);
    p.push_back(chosen);
  }

  std::vector<int> position(static_cast<std::size_t>(params.n) + 1, 0);
  for (std::size_t i = 0; i < p.size(); ++i) position[static_cast<std::size_t>(p[i])] = static_cast<int>(i);

  FlowGraph g = FlowGraph::intact(params);
  for (int node : p) {
    std::vector<int> candidates = to_nodes(fs.candidate_set(node));
    std::sort(candidates.begin(), candidates.end(), [&](int x, int y) {
      return position[static_cast<std::size_t>(x)] < position[static_cast<std::size_t>(y)];
    });
    NodeMask unavailable = 0;
    for (std::size_t i = candidates.size() - static_cast<std::size_t>(params.r);
         i < candidates.size(); ++i)
      unavailable |= node_bit(candidates[i]);
    NodeMask helpers = fs.candidate_set(node) & ~unavailable;
    g = g.grow_repair(node, unavailable, helpers);
  }

  std::vector<int> oldest(p.begin(), p.begin() + params.k);
  Witness w;
  w.params = params;
  w.kind = WitnessKind::FamilyPermutation;
  w.events = g.history();
  w.distinguished = oldest;
  w.collector = mask_of(oldest);
  w.cut_value = direct_cut_value(g, oldest);
  w.collector_min_cut = g.min_cut(w.collector);
  return w;
}

Witness bhs_staircase_witness(const SystemParams& params) {
  require_valid(params);
  FlowGraph g = FlowGraph::intact(params);
  for (int i = 1; i <= params.k; ++i) {
    NodeMask helpers = 0;
    int picked = 0;
    for (int h = 1; h < i && picked < params.d; ++h, ++picked) helpers |= node_bit(h);
    for (int h = i + 1; picked < params.d; ++h, ++picked) helpers |= node_bit(h);
    g = g.grow_repair(i, 0, helpers);
  }
  std::vector<int> members;
  for (int i = 1; i <= params.k; ++i) members.push_back(i);

  Witness w;
  w.params = params;
  w.kind = WitnessKind::MSet;
  w.events = g.history();
  w.distinguished = members;
  w.collector = mask_of(members);
  w.cut_value = direct_cut_value(g, members);
  w.collector_min_cut = g.min_cut(w.collector);
  return w;
}

}  // namespace lrrc

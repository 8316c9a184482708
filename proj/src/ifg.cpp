#include "lrrc/ifg.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <queue>

#include "lrrc/errors.hpp"

namespace lrrc {

namespace {

// Dinic max-flow on int64 capacities. Graphs here are tiny (two vertices per
// live incarnation), so no frills.
class Dinic {
 public:
  explicit Dinic(int vertex_count) : head_(static_cast<std::size_t>(vertex_count), -1) {}

  void add_edge(int from, int to, std::int64_t cap) {
    edges_.push_back({to, head_[static_cast<std::size_t>(from)], cap});
    head_[static_cast<std::size_t>(from)] = static_cast<int>(edges_.size()) - 1;
    edges_.push_back({from, head_[static_cast<std::size_t>(to)], 0});
    head_[static_cast<std::size_t>(to)] = static_cast<int>(edges_.size()) - 1;
  }

  std::int64_t max_flow(int s, int t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      iter_ = head_;
      while (std::int64_t pushed = dfs(s, t, INT64_MAX)) total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    int next;
    std::int64_t cap;
  };

  bool bfs(int s, int t) {
    level_.assign(head_.size(), -1);
    level_[static_cast<std::size_t>(s)] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[static_cast<std::size_t>(u)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
        const Edge& ed = edges_[static_cast<std::size_t>(e)];
        if (ed.cap > 0 && level_[static_cast<std::size_t>(ed.to)] < 0) {
          level_[static_cast<std::size_t>(ed.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(ed.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  std::int64_t dfs(int u, int t, std::int64_t limit) {
    if (u == t) return limit;
    for (int& e = iter_[static_cast<std::size_t>(u)]; e != -1; e = edges_[static_cast<std::size_t>(e)].next) {
      Edge& ed = edges_[static_cast<std::size_t>(e)];
      if (ed.cap <= 0 || level_[static_cast<std::size_t>(ed.to)] != level_[static_cast<std::size_t>(u)] + 1)
        continue;
      std::int64_t pushed = dfs(ed.to, t, std::min(limit, ed.cap));
      if (pushed > 0) {
        ed.cap -= pushed;
        edges_[static_cast<std::size_t>(e ^ 1)].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<int> head_;
  std::vector<int> iter_;
  std::vector<int> level_;
};

}  // namespace

FlowGraph FlowGraph::intact(const SystemParams& params) {
  require_valid(params);
  FlowGraph g;
  g.params_ = params;
  g.active_.assign(static_cast<std::size_t>(params.n) + 1, -1);
  for (int phys = 1; phys <= params.n; ++phys) {
    g.active_[static_cast<std::size_t>(phys)] = static_cast<int>(g.incarnations_.size());
    g.incarnations_.push_back({phys, 0, {}});
  }
  return g;
}

FlowGraph FlowGraph::grow_repair(int failed, NodeMask unavailable, NodeMask helpers) const {
  if (failed < 1 || failed > params_.n) throw ProtocolViolationError("failed node out of range");
  if (contains(unavailable, failed))
    throw ProtocolViolationError("failed node listed as unavailable");
  if (set_size(unavailable) > params_.r)
    throw ProtocolViolationError("unavailable set larger than r");
  if ((helpers & (unavailable | node_bit(failed))) != 0)
    throw ProtocolViolationError("helper overlaps the failed or unavailable nodes");
  if ((helpers & ~full_mask(params_.n)) != 0)
    throw ProtocolViolationError("helper out of range");
  if (set_size(helpers) != params_.d)
    throw PreconditionError("expected exactly d helpers");

  FlowGraph g = *this;
  int stage = static_cast<int>(history_.size()) + 1;
  Incarnation inc;
  inc.phys = failed;
  inc.stage = stage;
  for (int h : to_nodes(helpers)) inc.fed_by.push_back(active_[static_cast<std::size_t>(h)]);
  g.active_[static_cast<std::size_t>(failed)] = static_cast<int>(g.incarnations_.size());
  g.incarnations_.push_back(std::move(inc));
  g.history_.push_back({stage, failed, unavailable, helpers});
  return g;
}

FlowGraph FlowGraph::replay(const SystemParams& params, std::span<const RepairEvent> events) {
  FlowGraph g = intact(params);
  for (const auto& e : events) g = g.grow_repair(e.failed, e.unavailable, e.helpers);
  return g;
}

Rat FlowGraph::min_cut(NodeMask collector) const {
  if (set_size(collector) != params_.k)
    throw PreconditionError("collector must attach to exactly k nodes");
  if ((collector & ~full_mask(params_.n)) != 0)
    throw PreconditionError("collector node out of range");

  // Scale alpha and beta to a common integer grid.
  std::int64_t scale = std::lcm(params_.alpha.den(), params_.beta.den());
  std::int64_t alpha_i = params_.alpha.num() * (scale / params_.alpha.den());
  std::int64_t beta_i = params_.beta.num() * (scale / params_.beta.den());
  // Unbounded edges: k*alpha + n*d*beta + 1 never saturates a finite cut.
  std::int64_t inf = alpha_i * params_.k + beta_i * params_.n * params_.d + 1;

  int m = static_cast<int>(incarnations_.size());
  int source = 2 * m;
  int sink = 2 * m + 1;
  Dinic net(2 * m + 2);
  for (int i = 0; i < m; ++i) {
    const Incarnation& inc = incarnations_[static_cast<std::size_t>(i)];
    net.add_edge(2 * i, 2 * i + 1, alpha_i);
    if (inc.stage == 0)
      net.add_edge(source, 2 * i, inf);
    else
      for (int h : inc.fed_by) net.add_edge(2 * h + 1, 2 * i, beta_i);
  }
  for (int phys : to_nodes(collector))
    net.add_edge(2 * active_[static_cast<std::size_t>(phys)] + 1, sink, inf);

  return Rat(net.max_flow(source, sink), scale);
}

Rat FlowGraph::min_over_collectors() const {
  bool first = true;
  Rat best = 0;
  for_each_subset_of_size(full_mask(params_.n), params_.k, [&](NodeMask dc) {
    Rat v = min_cut(dc);
    if (first || v < best) {
      best = v;
      first = false;
    }
  });
  return best;
}

void FlowGraph::dump_edges(std::ostream& os) const {
  const Rat& a = params_.alpha;
  const Rat& b = params_.beta;
  for (std::size_t i = 0; i < incarnations_.size(); ++i) {
    const Incarnation& inc = incarnations_[i];
    if (inc.stage == 0) os << -1 << ' ' << 2 * i << " 0 0\n";  // 0/0 marks unbounded
    os << 2 * i << ' ' << 2 * i + 1 << ' ' << a.num() << ' ' << a.den() << '\n';
    for (int h : inc.fed_by)
      os << 2 * h + 1 << ' ' << 2 * i << ' ' << b.num() << ' ' << b.den() << '\n';
  }
}

bool structure_check(const FlowGraph& g, const std::vector<int>& nodes, StructureKind kind) {
  if (kind == StructureKind::MTree && g.params().d != 1)
    throw PreconditionError("m-tree checks require d = 1");

  std::vector<int> incs;
  for (int phys : nodes) {
    if (phys < 1 || phys > g.params().n) throw PreconditionError("node out of range");
    incs.push_back(g.active_incarnation(phys));
  }
  std::sort(incs.begin(), incs.end(), [&](int a, int b) {
    return g.incarnations()[static_cast<std::size_t>(a)].stage <
           g.incarnations()[static_cast<std::size_t>(b)].stage;
  });
  for (int id : incs)
    if (g.incarnations()[static_cast<std::size_t>(id)].stage == 0) return false;

  if (kind == StructureKind::MSet) {
    for (std::size_t younger = 1; younger < incs.size(); ++younger) {
      const auto& fed = g.incarnations()[static_cast<std::size_t>(incs[younger])].fed_by;
      for (std::size_t older = 0; older < younger; ++older)
        if (std::find(fed.begin(), fed.end(), incs[older]) == fed.end()) return false;
    }
    return true;
  }

  for (std::size_t i = 1; i < incs.size(); ++i) {
    const auto& fed = g.incarnations()[static_cast<std::size_t>(incs[i])].fed_by;
    bool wired = false;
    for (std::size_t j = 0; j < i && !wired; ++j)
      wired = std::find(fed.begin(), fed.end(), incs[j]) != fed.end();
    if (!wired) return false;
  }
  return true;
}

}  // namespace lrrc

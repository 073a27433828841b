#include "athena/umschedule.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

namespace athena {

SchedulingGroup lookahead_window(std::span<const Block> blocks, int current, int k) {
  SchedulingGroup group;
  group.current = current;
  const auto& cur = blocks[static_cast<std::size_t>(current)];
  for (std::size_t b = static_cast<std::size_t>(current) + 1;
       b < blocks.size() && static_cast<int>(group.lookahead.size()) < k; ++b)
    if (!overlap_qubits(cur, blocks[b]).empty()) group.lookahead.push_back(static_cast<int>(b));
  return group;
}

double estimate_gate_cost(const Gate& g, const Layout& layout, const Topology& topo, double alpha) {
  const int a = g.qubits[0];
  const int b = g.qubits[1];
  const int ca = layout.chip(a);
  const int cb = layout.chip(b);
  if (ca == cb) return 0.0;
  double best = topo.adjacent(ca, cb) ? alpha : kInfeasible;
  for (int x = 0; x < topo.chip_count(); ++x) {
    int need = 0;
    double cost = 0.0;
    if (ca != x) {
      cost += topo.hops(ca, x);
      need += layout.home(a) != x;
    }
    if (cb != x) {
      cost += topo.hops(cb, x);
      need += layout.home(b) != x;
    }
    if (need <= layout.free_slots(x)) best = std::min(best, cost);
  }
  return best == kInfeasible ? topo.hops(ca, cb) + 1.0 : best;
}

double lookahead_cost(const GateDag& dag, std::span<const PendingGate> pending, const Layout& layout,
                      const Topology& topo, const CostParams& params) {
  double total = 0.0;
  for (const auto& p : pending) {
    const double c = estimate_gate_cost(dag.gate(p.gate), layout, topo, params.alpha);
    if (c > 0.0) total += std::pow(params.beta, p.distance) * c;
  }
  return total;
}

namespace {

// Breadth-first tree from `from` over chips that can take `qubit` without an
// eviction. parent[c] == -1 marks unreachable chips (and the root).
std::vector<int> open_tree(const Layout& layout, const Topology& topo, int qubit, int from) {
  std::vector<int> parent(static_cast<std::size_t>(topo.chip_count()), -1);
  std::vector<int> queue{from};
  parent[static_cast<std::size_t>(from)] = from;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (int next : topo.neighbors(queue[head])) {
      if (parent[static_cast<std::size_t>(next)] >= 0) continue;
      if (next != layout.home(qubit) && layout.free_slots(next) < 1) continue;
      parent[static_cast<std::size_t>(next)] = queue[head];
      queue.push_back(next);
    }
  parent[static_cast<std::size_t>(from)] = -1;
  return parent;
}

std::vector<int> path_in(const std::vector<int>& parent, int from, int to) {
  if (to != from && parent[static_cast<std::size_t>(to)] < 0) return {};
  std::vector<int> path{to};
  while (path.back() != from) path.push_back(parent[static_cast<std::size_t>(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

void hop_path(PlanState& state, std::span<const int> path, int qubit, int gate, int block, bool eviction) {
  for (std::size_t i = 1; i < path.size(); ++i) {
    state.emitted.push_back(make_relocate(qubit, path[i - 1], path[i], gate, block, eviction));
    state.layout.move(qubit, path[i]);
    ++(eviction ? state.eviction_hops : state.gate_hops);
  }
}

bool contains(std::span<const int> xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

bool release_slot(PlanState& state, int chip, const EvictionContext& ctx, std::vector<int>& busy);

// Simple chip paths from `from` to `to` at most two hops longer than the
// shortest, skipping `avoid` as intermediates. Shortest first, then by chip ids.
std::vector<std::vector<int>> routes(const Topology& topo, int from, int to, std::span<const int> avoid) {
  constexpr std::size_t kMaxRoutes = 8;
  const int limit = topo.hops(from, to) + 2;
  std::vector<std::vector<int>> out;
  std::vector<int> path{from};
  auto extend = [&](auto&& self) -> void {
    const int here = path.back();
    if (here == to) {
      out.push_back(path);
      return;
    }
    if (static_cast<int>(path.size()) > limit) return;
    for (int next : topo.neighbors(here)) {
      if (contains(path, next) || (next != to && contains(avoid, next))) continue;
      if (static_cast<int>(path.size()) + topo.hops(next, to) > limit) continue;
      path.push_back(next);
      self(self);
      path.pop_back();
    }
  };
  extend(extend);
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (out.size() > kMaxRoutes) out.resize(kMaxRoutes);
  return out;
}

// Moves `qubit` along `path`, clearing a slot on every full chip it enters.
bool walk_route(PlanState& state, int qubit, std::span<const int> path, bool eviction, const EvictionContext& ctx,
                std::vector<int>& busy) {
  const int home = state.layout.home(qubit);
  for (std::size_t i = 1; i < path.size(); ++i) {
    const int next = path[i];
    if (next != home && state.layout.free_slots(next) < 1 && !release_slot(state, next, ctx, busy)) return false;
    state.emitted.push_back(make_relocate(qubit, path[i - 1], next, ctx.gate, ctx.block, eviction));
    state.layout.move(qubit, next);
    ++(eviction ? state.eviction_hops : state.gate_hops);
  }
  return true;
}

// Tries each route on a scratch copy and commits the first that succeeds.
bool move_via_routes(PlanState& state, int qubit, int to, bool eviction, const EvictionContext& ctx,
                     std::vector<int>& busy) {
  for (const auto& path : routes(ctx.topo, state.layout.chip(qubit), to, busy)) {
    PlanState attempt{state.layout, {}, 0, 0, 0};
    if (!walk_route(attempt, qubit, path, eviction, ctx, busy)) continue;
    state.layout = std::move(attempt.layout);
    state.emitted.insert(state.emitted.end(), attempt.emitted.begin(), attempt.emitted.end());
    state.gate_hops += attempt.gate_hops;
    state.eviction_hops += attempt.eviction_hops;
    return true;
  }
  return false;
}

bool release_slot(PlanState& state, int chip, const EvictionContext& ctx, std::vector<int>& busy) {
  const Layout& layout = state.layout;
  std::vector<int> residents;
  for (int r : layout.externals(chip))
    if (!contains(ctx.protect, r)) residents.push_back(r);
  if (residents.empty()) return false;

  if (ctx.policy == EvictionPolicy::Benefit) {
    int pick = -1;
    std::vector<int> pick_path;
    long long pick_pos = NextUse::kNever;
    for (int r : residents) {
      const auto use = ctx.next_use(r);
      if (use.partner < 0) continue;
      const int y = layout.chip(use.partner);
      if (y == chip) continue;
      auto path = path_in(open_tree(layout, ctx.topo, r, chip), chip, y);
      if (path.empty()) continue;
      if (pick < 0 || use.position < pick_pos) {
        pick = r;
        pick_path = std::move(path);
        pick_pos = use.position;
      }
    }
    if (pick >= 0) {
      hop_path(state, pick_path, pick, ctx.gate, ctx.block, true);
      return true;
    }
  }

  std::vector<std::pair<long long, int>> order;
  for (int r : residents) order.emplace_back(ctx.next_use(r).position, r);
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  // Home when reachable, else the nearest chip with room.
  for (const auto& [pos, r] : order) {
    const auto tree = open_tree(layout, ctx.topo, r, chip);
    auto path = path_in(tree, chip, layout.home(r));
    if (path.empty()) {
      int best = -1;
      std::size_t best_len = 0;
      for (int c = 0; c < ctx.topo.chip_count(); ++c) {
        if (c == chip || tree[static_cast<std::size_t>(c)] < 0) continue;
        auto candidate = path_in(tree, chip, c);
        if (best < 0 || candidate.size() < best_len) {
          best = c;
          best_len = candidate.size();
          path = std::move(candidate);
        }
      }
    }
    if (path.empty()) continue;
    hop_path(state, path, r, ctx.gate, ctx.block, true);
    return true;
  }
  // Every route is blocked by full chips: clear a way home, farthest use first.
  if (static_cast<int>(busy.size()) >= ctx.topo.chip_count()) return false;
  busy.push_back(chip);
  for (const auto& [pos, r] : order) {
    if (!move_via_routes(state, r, layout.home(r), true, ctx, busy)) continue;
    busy.pop_back();
    return true;
  }
  busy.pop_back();
  return false;
}

}  // namespace

bool epr_release(PlanState& state, int chip, const EvictionContext& ctx) {
  std::vector<int> busy;
  return release_slot(state, chip, ctx, busy);
}

bool route_qubit(PlanState& state, int qubit, int chip, const EvictionContext& ctx) {
  std::vector<int> busy;
  return move_via_routes(state, qubit, chip, false, ctx, busy);
}

std::vector<TeleportPlan> enumerate_plans(const GateDag& dag, const Gate& g, std::span<const PendingGate> pending,
                                          const Layout& layout, const Topology& topo) {
  const int ca = layout.chip(g.qubits[0]);
  const int cb = layout.chip(g.qubits[1]);
  if (ca == cb) return {};
  std::vector<char> seen(static_cast<std::size_t>(topo.chip_count()), 0);
  seen[static_cast<std::size_t>(ca)] = seen[static_cast<std::size_t>(cb)] = 1;
  for (const auto& p : pending)
    for (int q : dag.gate(p.gate).qubits) seen[static_cast<std::size_t>(layout.chip(q))] = 1;
  std::vector<TeleportPlan> plans;
  for (int c = 0; c < topo.chip_count(); ++c)
    if (seen[static_cast<std::size_t>(c)]) plans.push_back({c, false});
  if (topo.adjacent(ca, cb)) plans.push_back({cb, true});
  return plans;
}

bool apply_plan(PlanState& state, const Gate& g, const TeleportPlan& plan, const EvictionContext& ctx, double alpha) {
  (void)alpha;
  if (plan.recnot) {
    const int cc = state.layout.chip(g.qubits[0]);
    const int tc = state.layout.chip(g.qubits[1]);
    if (!ctx.topo.adjacent(cc, tc)) return false;
    // The proxy half of the EPR pair needs a slot on the target's chip.
    if (state.layout.free_slots(tc) < 1 && !epr_release(state, tc, ctx)) return false;
    state.emitted.push_back(make_recnot(g, cc, tc, ctx.block));
    ++state.recnots;
    return true;
  }
  // Either operand may have to leave first to open a slot for the other.
  for (const auto order : {std::array{g.qubits[0], g.qubits[1]}, std::array{g.qubits[1], g.qubits[0]}}) {
    PlanState attempt{state.layout, {}, 0, 0, 0};
    bool routed = true;
    for (int q : order)
      if (routed && attempt.layout.chip(q) != plan.target_chip) routed = route_qubit(attempt, q, plan.target_chip, ctx);
    if (!routed) continue;
    state.layout = std::move(attempt.layout);
    state.emitted.insert(state.emitted.end(), attempt.emitted.begin(), attempt.emitted.end());
    state.gate_hops += attempt.gate_hops;
    state.eviction_hops += attempt.eviction_hops;
    state.emitted.push_back(make_local_cnot(g, plan.target_chip, ctx.block));
    return true;
  }
  return false;
}

bool regroup_plan(PlanState& state, const Gate& g, const EvictionContext& ctx) {
  auto& layout = state.layout;
  for (bool moved = true; moved;) {
    moved = false;
    bool away = false;
    for (int q = 0; q < layout.qubit_count(); ++q) {
      const int here = layout.chip(q);
      if (here == layout.home(q)) continue;
      away = true;
      const auto path = path_in(open_tree(layout, ctx.topo, q, here), here, layout.home(q));
      if (path.empty()) continue;
      hop_path(state, path, q, ctx.gate, ctx.block, !contains(ctx.protect, q));
      moved = true;
    }
    if (!away) break;
    if (!moved) return false;
  }
  const int from = layout.chip(g.qubits[0]);
  const int to = layout.chip(g.qubits[1]);
  const auto path = path_in(open_tree(layout, ctx.topo, g.qubits[0], from), from, to);
  if (path.empty()) return false;
  hop_path(state, path, g.qubits[0], ctx.gate, ctx.block, false);
  state.emitted.push_back(make_local_cnot(g, to, ctx.block));
  return true;
}

namespace {

// Persistent instruction list shared between candidates that branched from a
// common prefix.
struct Segment {
  std::vector<Instruction> instrs;
  mutable std::shared_ptr<const Segment> prev;

  Segment(std::vector<Instruction> in, std::shared_ptr<const Segment> p)
      : instrs(std::move(in)), prev(std::move(p)) {}
  Segment(const Segment&) = delete;
  Segment& operator=(const Segment&) = delete;
  // Unlinks iteratively so long chains do not recurse on destruction.
  ~Segment() {
    auto p = std::move(prev);
    while (p && p.use_count() == 1) {
      auto next = std::move(p->prev);
      p = std::move(next);
    }
  }
};

struct Candidate {
  Layout layout;
  std::shared_ptr<const Segment> tail;
  int relocations = 0;
  int recnots = 0;
  double cost = 0.0;
  double score = 0.0;
  std::uint64_t hash = 0;
};

std::vector<Instruction> flatten(const std::shared_ptr<const Segment>& tail) {
  std::vector<const Segment*> chain;
  for (const Segment* s = tail.get(); s != nullptr; s = s->prev.get()) chain.push_back(s);
  std::vector<Instruction> out;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    out.insert(out.end(), (*it)->instrs.begin(), (*it)->instrs.end());
  return out;
}

}  // namespace

ScheduleResult schedule_ums(const GateDag& dag, std::span<const Block> blocks, const Layout& initial,
                            const Topology& topo, const CostParams& params, bool keep_trace) {
  params.check();
  ScheduleResult result;
  std::vector<Candidate> layer(1);
  layer[0].layout = initial;
  layer[0].hash = initial.hash();

  std::vector<NextUse> uses(static_cast<std::size_t>(dag.qubit_count()));
  const NextUseFn next_use = [&uses](int q) { return uses[static_cast<std::size_t>(q)]; };
  int layer_index = 0;

  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& block = blocks[b];
    const auto group = lookahead_window(blocks, static_cast<int>(b), params.window);
    std::vector<PendingGate> ahead;
    for (int lb : group.lookahead)
      for (int id : blocks[static_cast<std::size_t>(lb)].gates) ahead.push_back({id, lb - static_cast<int>(b)});

    for (std::size_t pos = 0; pos < block.gates.size(); ++pos) {
      const Gate& g = dag.gate(block.gates[pos]);
      std::vector<PendingGate> pending;
      for (std::size_t r = pos + 1; r < block.gates.size(); ++r) pending.push_back({block.gates[r], 0});
      pending.insert(pending.end(), ahead.begin(), ahead.end());

      std::fill(uses.begin(), uses.end(), NextUse{});
      for (std::size_t i = pending.size(); i-- > 0;) {
        const auto& pg = dag.gate(pending[i].gate);
        uses[static_cast<std::size_t>(pg.qubits[0])] = {static_cast<long long>(i), pg.qubits[1]};
        uses[static_cast<std::size_t>(pg.qubits[1])] = {static_cast<long long>(i), pg.qubits[0]};
      }
      const std::array<int, 2> protect{g.qubits[0], g.qubits[1]};
      const EvictionContext ctx{topo, next_use, EvictionPolicy::Benefit, protect, g.id, block.id};

      std::vector<Candidate> next;
      bool any_teleport = false;
      for (const auto& cand : layer) {
        const int ca = cand.layout.chip(g.qubits[0]);
        if (ca == cand.layout.chip(g.qubits[1])) {
          Candidate c = cand;
          c.tail = std::make_shared<const Segment>(std::vector<Instruction>{make_local_cnot(g, ca, block.id)}, cand.tail);
          next.push_back(std::move(c));
          continue;
        }
        any_teleport = true;
        auto keep = [&](PlanState&& state) {
          Candidate c;
          c.layout = std::move(state.layout);
          c.relocations = cand.relocations + state.gate_hops + state.eviction_hops;
          c.recnots = cand.recnots + state.recnots;
          c.cost = c.relocations + params.alpha * c.recnots;
          c.hash = c.layout.hash();
          c.tail = std::make_shared<const Segment>(std::move(state.emitted), cand.tail);
          next.push_back(std::move(c));
        };
        auto expand = [&](std::span<const TeleportPlan> plans) {
          const std::size_t before = next.size();
          for (const auto& plan : plans) {
            PlanState state{cand.layout, {}, 0, 0, 0};
            if (apply_plan(state, g, plan, ctx, params.alpha)) keep(std::move(state));
          }
          return next.size() > before;
        };
        const auto plans = enumerate_plans(dag, g, pending, cand.layout, topo);
        if (expand(plans)) continue;
        // No listed plan fits: meet on any other chip instead.
        std::vector<TeleportPlan> rest;
        for (int chip = 0; chip < topo.chip_count(); ++chip)
          if (std::none_of(plans.begin(), plans.end(),
                           [chip](const TeleportPlan& t) { return !t.recnot && t.target_chip == chip; }))
            rest.push_back({chip, false});
        if (expand(rest)) continue;
        PlanState state{cand.layout, {}, 0, 0, 0};
        if (regroup_plan(state, g, ctx)) keep(std::move(state));
      }
      if (next.empty()) {
        const int cc = layer.front().layout.chip(g.qubits[1]);
        throw DeadlockError("no teleport plan for gate " + std::to_string(g.id) + ": chip " + std::to_string(cc) +
                                " has no evictable communication slot",
                            g.id, cc);
      }
      if (any_teleport) {
        for (auto& c : next) {
          c.hash = c.layout.hash();
          c.score = c.cost + lookahead_cost(dag, pending, c.layout, topo, params);
        }
        // Keep the cheapest candidate per distinct layout.
        std::vector<Candidate> unique;
        std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
        for (auto& c : next) {
          auto& bucket = by_hash[c.hash];
          bool merged = false;
          for (std::size_t idx : bucket) {
            auto& u = unique[idx];
            if (!u.layout.same_chips(c.layout)) continue;
            if (c.cost < u.cost) u = std::move(c);
            merged = true;
            break;
          }
          if (!merged) {
            bucket.push_back(unique.size());
            unique.push_back(std::move(c));
          }
        }
        std::stable_sort(unique.begin(), unique.end(), [](const Candidate& x, const Candidate& y) {
          if (x.score != y.score) return x.score < y.score;
          return x.hash < y.hash;
        });
        if (unique.size() > static_cast<std::size_t>(params.beam)) unique.resize(static_cast<std::size_t>(params.beam));
        next = std::move(unique);
      }
      layer = std::move(next);
      if (keep_trace) {
        LayerTrace t{layer_index, block.id, g.id, {}, {}};
        for (const auto& c : layer) {
          t.costs.push_back(c.cost);
          t.scores.push_back(c.score);
        }
        result.trace.push_back(std::move(t));
      }
      ++layer_index;
    }
  }

  const auto best = std::min_element(layer.begin(), layer.end(), [](const Candidate& x, const Candidate& y) {
    if (x.cost != y.cost) return x.cost < y.cost;
    return x.hash < y.hash;
  });
  result.schedule.initial = initial;
  result.schedule.instructions = flatten(best->tail);
  result.cost = best->cost;
  return result;
}

}  // namespace athena

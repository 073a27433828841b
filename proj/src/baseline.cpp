#include "athena/baseline.hpp"

#include <algorithm>
#include <vector>

namespace athena {

ScheduleResult schedule_pergate(const GateDag& dag, const Layout& initial, const Topology& topo,
                                const CostParams& params) {
  params.check();
  std::vector<std::vector<int>> cnots_on(static_cast<std::size_t>(dag.qubit_count()));
  for (const auto& g : dag.gates())
    if (g.is_cnot())
      for (int q : g.qubits) cnots_on[static_cast<std::size_t>(q)].push_back(g.id);

  int current = -1;
  const NextUseFn next_use = [&](int q) {
    const auto& list = cnots_on[static_cast<std::size_t>(q)];
    const auto it = std::upper_bound(list.begin(), list.end(), current);
    if (it == list.end()) return NextUse{};
    const auto& g = dag.gate(*it);
    return NextUse{*it, g.qubits[0] == q ? g.qubits[1] : g.qubits[0]};
  };

  ScheduleResult result;
  result.schedule.initial = initial;
  PlanState state{initial, {}, 0, 0, 0};
  int block = 0;
  for (const auto& g : dag.gates()) {
    if (!g.is_cnot()) continue;
    current = g.id;
    const std::array<int, 2> protect{g.qubits[0], g.qubits[1]};
    const EvictionContext ctx{topo, next_use, EvictionPolicy::FarthestUse, protect, g.id, block};
    const int cc = state.layout.chip(g.qubits[0]);
    const int tc = state.layout.chip(g.qubits[1]);
    bool done = cc == tc;
    if (done) {
      state.emitted.push_back(make_local_cnot(g, cc, block));
    } else {
      // Target chip first, then the control's, then anywhere else by distance.
      std::vector<int> order{tc, cc};
      for (int c = 0; c < topo.chip_count(); ++c)
        if (c != tc && c != cc) order.push_back(c);
      std::stable_sort(order.begin() + 2, order.end(), [&](int x, int y) {
        return topo.hops(x, cc) + topo.hops(x, tc) < topo.hops(y, cc) + topo.hops(y, tc);
      });
      for (const int chip : order) {
        PlanState attempt{state.layout, {}, 0, 0, 0};
        if (apply_plan(attempt, g, TeleportPlan{chip, false}, ctx, params.alpha)) {
          state.layout = std::move(attempt.layout);
          state.emitted.insert(state.emitted.end(), attempt.emitted.begin(), attempt.emitted.end());
          state.gate_hops += attempt.gate_hops;
          state.eviction_hops += attempt.eviction_hops;
          done = true;
          break;
        }
      }
    }
    if (!done) {
      PlanState attempt{state.layout, {}, 0, 0, 0};
      if (regroup_plan(attempt, g, ctx)) {
        state.layout = std::move(attempt.layout);
        state.emitted.insert(state.emitted.end(), attempt.emitted.begin(), attempt.emitted.end());
        state.gate_hops += attempt.gate_hops;
        state.eviction_hops += attempt.eviction_hops;
        done = true;
      }
    }
    if (!done)
      throw DeadlockError("no relocation for gate " + std::to_string(g.id) + " toward chip " + std::to_string(tc), g.id,
                          tc);
    ++block;
  }
  result.schedule.instructions = std::move(state.emitted);
  result.cost = state.gate_hops + state.eviction_hops + params.alpha * state.recnots;
  return result;
}

ScheduleResult schedule_blockgreedy(const GateDag& dag, std::span<const Block> blocks, const Layout& initial,
                                    const Topology& topo, const CostParams& params) {
  CostParams greedy = params;
  greedy.beam = 1;
  greedy.window = 0;
  return schedule_ums(dag, blocks, initial, topo, greedy);
}

}  // namespace athena

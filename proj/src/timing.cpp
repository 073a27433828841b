#include "athena/timing.hpp"

#include <algorithm>
#include <stdexcept>

namespace athena {

TimingGraph build_timing_graph(const Schedule& schedule, const Topology& topo) {
  const auto& stream = schedule.instructions;
  const Layout& layout = schedule.initial;
  const auto chips = static_cast<std::size_t>(topo.chip_count());
  const auto cap = static_cast<std::size_t>(topo.epr_capacity());

  TimingGraph graph;
  graph.preds.resize(stream.size());
  std::vector<int> last_on_qubit(static_cast<std::size_t>(layout.qubit_count()), -1);
  std::vector<std::vector<int>> holder(chips, std::vector<int>(cap, -1));
  std::vector<std::vector<int>> releaser(chips, std::vector<int>(cap, -1));
  std::vector<int> slot_of(static_cast<std::size_t>(layout.qubit_count()), -1);
  std::vector<long long> link_uses(topo.edges().size(), 0);
  std::vector<std::vector<int>> link_last(topo.edges().size(),
                                          std::vector<int>(static_cast<std::size_t>(topo.links_per_edge()), -1));

  auto acquire = [&](int chip, int who, std::vector<int>& preds) {
    auto& h = holder[static_cast<std::size_t>(chip)];
    const auto it = std::find(h.begin(), h.end(), -1);
    if (it == h.end())
      throw std::logic_error("stream overfills communication slots on chip " + std::to_string(chip));
    const auto s = static_cast<std::size_t>(it - h.begin());
    *it = who;
    const int r = releaser[static_cast<std::size_t>(chip)][s];
    if (r >= 0) preds.push_back(r);
    return static_cast<int>(s);
  };
  auto use_link = [&](int a, int b, int i, std::vector<int>& preds) {
    const int e = topo.edge_index(a, b);
    if (e < 0) throw std::logic_error("teleport between non-adjacent chips");
    const auto k = static_cast<std::size_t>(link_uses[static_cast<std::size_t>(e)]++ % topo.links_per_edge());
    auto& last = link_last[static_cast<std::size_t>(e)][k];
    if (last >= 0) preds.push_back(last);
    last = i;
  };

  for (std::size_t idx = 0; idx < stream.size(); ++idx) {
    const auto& in = stream[idx];
    const int i = static_cast<int>(idx);
    auto& preds = graph.preds[idx];
    for (int k = 0; k < in.arity(); ++k) {
      const int q = in.qubits[static_cast<std::size_t>(k)];
      if (last_on_qubit[static_cast<std::size_t>(q)] >= 0) preds.push_back(last_on_qubit[static_cast<std::size_t>(q)]);
    }
    if (in.kind == OpKind::Relocate) {
      const int q = in.qubits[0];
      const auto qi = static_cast<std::size_t>(q);
      if (in.from_chip != layout.home(q)) {
        const auto s = static_cast<std::size_t>(slot_of[qi]);
        holder[static_cast<std::size_t>(in.from_chip)][s] = -1;
        releaser[static_cast<std::size_t>(in.from_chip)][s] = i;
        slot_of[qi] = -1;
      }
      if (in.to_chip != layout.home(q)) slot_of[qi] = acquire(in.to_chip, q, preds);
      use_link(in.from_chip, in.to_chip, i, preds);
    } else if (in.kind == OpKind::ReCnot) {
      const int s = acquire(in.to_chip, -2, preds);
      holder[static_cast<std::size_t>(in.to_chip)][static_cast<std::size_t>(s)] = -1;
      releaser[static_cast<std::size_t>(in.to_chip)][static_cast<std::size_t>(s)] = i;
      use_link(in.from_chip, in.to_chip, i, preds);
    }
    for (int k = 0; k < in.arity(); ++k) last_on_qubit[static_cast<std::size_t>(in.qubits[static_cast<std::size_t>(k)])] = i;
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
  }
  return graph;
}

std::vector<Nanos> ready_times(const Schedule& schedule, const TimingGraph& graph) {
  std::vector<Nanos> ready(schedule.instructions.size(), Nanos{0});
  for (std::size_t i = 0; i < ready.size(); ++i)
    for (int p : graph.preds[i]) ready[i] = std::max(ready[i], schedule.instructions[static_cast<std::size_t>(p)].end());
  return ready;
}

Nanos simulate_latency(Schedule& schedule, const Topology& topo, TimingMode mode) {
  const auto graph = build_timing_graph(schedule, topo);
  auto& stream = schedule.instructions;
  Nanos makespan{0};
  Nanos barrier{0};       // end of every block before the current one
  Nanos current_end{0};   // end of the current block so far
  int current_block = stream.empty() ? 0 : stream.front().block;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    auto& in = stream[i];
    Nanos start{0};
    for (int p : graph.preds[i]) start = std::max(start, stream[static_cast<std::size_t>(p)].end());
    if (mode == TimingMode::BlockBarrier) {
      if (in.block < current_block) throw std::logic_error("block ids must be nondecreasing along the stream");
      if (in.block > current_block) {
        barrier = std::max(barrier, current_end);
        current_block = in.block;
      }
      start = std::max(start, barrier);
    }
    in.start = start;
    current_end = std::max(current_end, in.end());
    makespan = std::max(makespan, in.end());
  }
  return makespan;
}

}  // namespace athena

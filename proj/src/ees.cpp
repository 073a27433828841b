#include "athena/ees.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace athena {

namespace {

constexpr Nanos kForever = Nanos::max();

// Who holds communication slots where, in stream terms. Times are read from
// the schedule at query time so the same index serves every pass.
struct SlotOccupancy {
  struct Stay {
    int arrival;    // relocation into the chip, or the Re-CNOT itself
    int departure;  // relocation out of the chip; -1 while still resident
  };
  std::vector<std::vector<Stay>> by_chip;
  std::vector<int> previous_on_qubit;  // stream index of the prior instruction on qubit[0]

  SlotOccupancy(const Schedule& schedule, const Topology& topo)
      : by_chip(static_cast<std::size_t>(topo.chip_count())), previous_on_qubit(schedule.instructions.size(), -1) {
    const auto& stream = schedule.instructions;
    const Layout& layout = schedule.initial;
    std::vector<int> last(static_cast<std::size_t>(layout.qubit_count()), -1);
    std::vector<std::pair<int, std::size_t>> open(static_cast<std::size_t>(layout.qubit_count()), {-1, 0});
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const auto& in = stream[i];
      const int idx = static_cast<int>(i);
      previous_on_qubit[i] = last[static_cast<std::size_t>(in.qubits[0])];
      if (in.kind == OpKind::Relocate) {
        const auto q = static_cast<std::size_t>(in.qubits[0]);
        if (open[q].first >= 0) {
          by_chip[static_cast<std::size_t>(open[q].first)][open[q].second].departure = idx;
          open[q] = {-1, 0};
        }
        if (in.to_chip != layout.home(in.qubits[0])) {
          auto& list = by_chip[static_cast<std::size_t>(in.to_chip)];
          open[q] = {in.to_chip, list.size()};
          list.push_back({idx, -1});
        }
      } else if (in.kind == OpKind::ReCnot) {
        by_chip[static_cast<std::size_t>(in.to_chip)].push_back({idx, idx});
      }
      for (int k = 0; k < in.arity(); ++k) last[static_cast<std::size_t>(in.qubits[static_cast<std::size_t>(k)])] = idx;
    }
  }
};

// Steps e back from its current start by the duration of the previous
// instruction on its qubit. A step is taken only if the chip never overflows
// while e is present earlier, and e leaves a slot free at the new start.
Nanos walk_back(const Schedule& schedule, const SlotOccupancy& occ, std::size_t index, Nanos earliest,
                const Topology& topo) {
  const auto& stream = schedule.instructions;
  const auto& e = stream[index];
  const Nanos latest = e.start;
  if (latest <= earliest) return latest;
  const int cap = topo.epr_capacity();

  // Occupancy by others as a step function over [earliest, latest).
  std::vector<std::pair<Nanos, int>> events;
  for (const auto& stay : occ.by_chip[static_cast<std::size_t>(e.to_chip)]) {
    if (stay.arrival == static_cast<int>(index)) continue;
    const Nanos begin = stream[static_cast<std::size_t>(stay.arrival)].start;
    const Nanos end = stay.departure < 0 ? kForever : stream[static_cast<std::size_t>(stay.departure)].end();
    if (end <= earliest || begin >= latest) continue;
    events.emplace_back(std::max(begin, earliest), +1);
    if (end < latest) events.emplace_back(end, -1);
  }
  // Ends sort before starts at equal times.
  std::sort(events.begin(), events.end());
  std::vector<Nanos> seg_begin{earliest};
  std::vector<int> seg_count{0};
  for (const auto& [t, delta] : events) {
    if (t != seg_begin.back()) {
      seg_begin.push_back(t);
      seg_count.push_back(seg_count.back());
    }
    seg_count.back() += delta;
  }
  std::vector<int> suffix_max(seg_count.size());
  for (std::size_t k = seg_count.size(); k-- > 0;)
    suffix_max[k] = std::max(seg_count[k], k + 1 < seg_count.size() ? suffix_max[k + 1] : 0);
  auto segment_of = [&](Nanos t) {
    return static_cast<std::size_t>(std::upper_bound(seg_begin.begin(), seg_begin.end(), t) - seg_begin.begin()) - 1;
  };

  const int prev = occ.previous_on_qubit[index];
  const Nanos step = prev >= 0 ? stream[static_cast<std::size_t>(prev)].duration : e.duration;
  Nanos start = latest;
  while (start > earliest) {
    const Nanos candidate = std::max(earliest, start - step);
    const auto k = segment_of(candidate);
    if (suffix_max[k] + 1 > cap || seg_count[k] + 1 >= cap) break;
    start = candidate;
  }
  return start;
}

}  // namespace

std::vector<EarlyInstruction> collect_early(const Schedule& schedule, const Topology& topo) {
  const auto graph = build_timing_graph(schedule, topo);
  const auto ready = ready_times(schedule, graph);
  std::vector<EarlyInstruction> out;
  for (std::size_t i = 0; i < ready.size(); ++i)
    if (ready[i] < schedule.instructions[i].start) out.push_back({static_cast<int>(i), ready[i]});
  std::sort(out.begin(), out.end(), [](const EarlyInstruction& a, const EarlyInstruction& b) {
    return a.earliest != b.earliest ? a.earliest < b.earliest : a.index < b.index;
  });
  return out;
}

Nanos shift_early(const Schedule& schedule, std::size_t index, Nanos earliest, const Topology& topo) {
  const auto& in = schedule.instructions.at(index);
  if (in.kind != OpKind::Relocate || in.to_chip == schedule.initial.home(in.qubits[0]))
    return std::min(in.start, std::max(earliest, Nanos{0}));
  const SlotOccupancy occ(schedule, topo);
  return walk_back(schedule, occ, index, earliest, topo);
}

Schedule run_ees(const Schedule& schedule, const Topology& topo, EesReport* report) {
  Schedule out = schedule;
  auto& stream = out.instructions;
  const auto graph = build_timing_graph(out, topo);
  const SlotOccupancy occ(out, topo);
  const auto n = stream.size();

  std::vector<std::vector<int>> succs(n);
  std::vector<int> waiting(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    waiting[i] = static_cast<int>(graph.preds[i].size());
    for (int p : graph.preds[i]) succs[static_cast<std::size_t>(p)].push_back(static_cast<int>(i));
  }
  auto earliest_of = [&](std::size_t i) {
    Nanos t{0};
    for (int p : graph.preds[i]) t = std::max(t, stream[static_cast<std::size_t>(p)].end());
    return t;
  };
  using Item = std::pair<Nanos, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (waiting[i] == 0) ready.emplace(earliest_of(i), static_cast<int>(i));

  EesReport rep;
  rep.makespan_before = schedule.makespan();
  while (!ready.empty()) {
    const auto [earliest, idx] = ready.top();
    ready.pop();
    const auto i = static_cast<std::size_t>(idx);
    auto& in = stream[i];
    const Nanos before = in.start;
    if (earliest > before) throw std::logic_error("input schedule violates its own precedence");
    Nanos start = earliest;
    if (in.kind == OpKind::Relocate && in.to_chip != out.initial.home(in.qubits[0])) {
      start = walk_back(out, occ, i, earliest, topo);
      if (start > earliest) ++rep.capacity_limited;
    }
    in.start = start;
    if (start < before) ++rep.moved;
    for (int s : succs[i])
      if (--waiting[static_cast<std::size_t>(s)] == 0)
        ready.emplace(earliest_of(static_cast<std::size_t>(s)), s);
  }
  rep.makespan_after = out.makespan();
  if (report != nullptr) *report = rep;
  return out;
}

}  // namespace athena

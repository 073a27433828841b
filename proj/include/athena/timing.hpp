#pragma once

#include <vector>

#include "athena/arch.hpp"
#include "athena/schedule.hpp"

namespace athena {

// Resource precedence over a schedule's stream: each instruction follows the
// previous user of each of its qubits, of the communication slot it occupies,
// and of the photonic link it uses. Any start times that respect these edges
// keep every qubit, slot and link exclusive.
struct TimingGraph {
  std::vector<std::vector<int>> preds;  // stream indices, ascending
};

[[nodiscard]] TimingGraph build_timing_graph(const Schedule& schedule, const Topology& topo);

enum class TimingMode {
  BlockBarrier,  // a block starts once every earlier block has finished
  Asap,
};

// Earliest start of each instruction given the current times of its
// predecessors.
[[nodiscard]] std::vector<Nanos> ready_times(const Schedule& schedule, const TimingGraph& graph);

// Assigns start times (durations must already be set) and returns the makespan.
Nanos simulate_latency(Schedule& schedule, const Topology& topo, TimingMode mode);

}  // namespace athena

#pragma once

#include <vector>

#include "athena/arch.hpp"
#include "athena/schedule.hpp"
#include "athena/timing.hpp"

namespace athena {

struct EarlyInstruction {
  int index = 0;     // stream position
  Nanos earliest{0};  // when its resource predecessors finish
};

// Instructions whose predecessors finish before they start, by ascending
// earliest time then stream position.
[[nodiscard]] std::vector<EarlyInstruction> collect_early(const Schedule& schedule, const Topology& topo);

// New start for relocation `index` walking back from its current start toward
// `earliest` in steps of the preceding instruction's duration on the same
// qubit. The walk stops before any step where the destination chip would be
// left without a free communication slot.
[[nodiscard]] Nanos shift_early(const Schedule& schedule, std::size_t index, Nanos earliest, const Topology& topo);

struct EesReport {
  Nanos makespan_before{0};
  Nanos makespan_after{0};
  int moved = 0;             // instructions that now start earlier
  int capacity_limited = 0;  // relocations held back by the slot rule
};

// Early-scheduling pass over a timed schedule. Instructions are settled in
// ascending earliest-start order; each starts as soon as its predecessors
// finish, except relocations into a foreign chip, which move only as far as
// shift_early allows. No instruction starts later than before.
[[nodiscard]] Schedule run_ees(const Schedule& schedule, const Topology& topo, EesReport* report = nullptr);

}  // namespace athena

#pragma once

#include <span>

#include "athena/blockform.hpp"
#include "athena/umschedule.hpp"

namespace athena {

// Every non-local CNOT on its own: the control follows a shortest path to the
// target's chip, or the target to the control's chip when that fails. Full
// chips evict the resident used farthest in the future.
[[nodiscard]] ScheduleResult schedule_pergate(const GateDag& dag, const Layout& initial, const Topology& topo,
                                              const CostParams& params);

// Block-at-a-time greedy: the beam scheduler with one candidate and no
// lookahead beyond the current block.
[[nodiscard]] ScheduleResult schedule_blockgreedy(const GateDag& dag, std::span<const Block> blocks,
                                                  const Layout& initial, const Topology& topo,
                                                  const CostParams& params);

}  // namespace athena

#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "athena/arch.hpp"
#include "athena/blockform.hpp"
#include "athena/circuit.hpp"
#include "athena/mapping.hpp"
#include "athena/schedule.hpp"

namespace athena {

// No teleport plan and no evictable resident for a gate.
class DeadlockError : public std::runtime_error {
 public:
  DeadlockError(const std::string& what, int gate, int chip)
      : std::runtime_error(what), gate_(gate), chip_(chip) {}
  [[nodiscard]] int gate() const noexcept { return gate_; }
  [[nodiscard]] int chip() const noexcept { return chip_; }

 private:
  int gate_;
  int chip_;
};

struct SchedulingGroup {
  int current = 0;
  std::vector<int> lookahead;  // block indices, ascending
};

// Scans the blocks after `current` in order and keeps up to k that share a
// qubit with it; non-overlapping blocks are skipped.
[[nodiscard]] SchedulingGroup lookahead_window(std::span<const Block> blocks, int current, int k);

// A CNOT still ahead of the gate being scheduled; `distance` is its block
// index minus the current block index.
struct PendingGate {
  int gate;
  int distance;
};

// Estimated cost of one CNOT from `layout`: the cheapest chip that can take
// both operands within its free slots, a Re-CNOT when the operands sit on
// adjacent chips, else hops + 1.
[[nodiscard]] double estimate_gate_cost(const Gate& g, const Layout& layout, const Topology& topo, double alpha);

// Sum of beta^distance * estimate over the pending gates.
[[nodiscard]] double lookahead_cost(const GateDag& dag, std::span<const PendingGate> pending, const Layout& layout,
                                    const Topology& topo, const CostParams& params);

struct NextUse {
  static constexpr long long kNever = std::numeric_limits<long long>::max();
  long long position = kNever;
  int partner = -1;
};
using NextUseFn = std::function<NextUse(int qubit)>;

enum class EvictionPolicy {
  Benefit,      // prefer residents whose next partner lives on another chip
  FarthestUse,  // farthest next use, sent home
};

// Mutable state a plan is applied to: a layout, the instructions emitted so
// far and the hop counts they cost.
struct PlanState {
  Layout layout;
  std::vector<Instruction> emitted;
  int gate_hops = 0;
  int eviction_hops = 0;
  int recnots = 0;
};

struct EvictionContext {
  const Topology& topo;
  NextUseFn next_use;
  EvictionPolicy policy;
  std::span<const int> protect;  // qubits never chosen as victims
  int gate;
  int block;
};

// Frees one communication slot on `chip` by relocating an external resident.
// Returns false, leaving `state` untouched, when no resident can leave.
bool epr_release(PlanState& state, int chip, const EvictionContext& ctx);

// Moves `qubit` to `chip` hop by hop, freeing slots on full chips along the
// way. Returns false when some hop cannot be made; `state` may then be partly
// updated and must be discarded.
bool route_qubit(PlanState& state, int qubit, int chip, const EvictionContext& ctx);

struct TeleportPlan {
  int target_chip = -1;  // chip running the gate; the target's chip for Re-CNOT
  bool recnot = false;
  friend bool operator==(const TeleportPlan&, const TeleportPlan&) = default;
};

// Relocation plans toward every chip hosting an operand of `g` or a qubit of a
// pending gate, plus a Re-CNOT plan when the operands sit on adjacent chips.
// Empty when `g` is already local.
[[nodiscard]] std::vector<TeleportPlan> enumerate_plans(const GateDag& dag, const Gate& g,
                                                        std::span<const PendingGate> pending, const Layout& layout,
                                                        const Topology& topo);

// Applies `plan` and appends the gate itself. False when infeasible.
bool apply_plan(PlanState& state, const Gate& g, const TeleportPlan& plan, const EvictionContext& ctx, double alpha);

// Last resort when no plan fits: sends every external qubit home, then moves
// the control to the target's home chip and runs the gate there. Returns
// false, with `state` partly updated, only if some qubit cannot get home.
bool regroup_plan(PlanState& state, const Gate& g, const EvictionContext& ctx);

struct LayerTrace {
  int layer = 0;
  int block = 0;
  int gate = 0;
  std::vector<double> costs;   // accumulated cost per retained candidate
  std::vector<double> scores;  // cost plus lookahead estimate
};

struct ScheduleResult {
  Schedule schedule;  // CNOTs and teleports only, untimed
  double cost = 0.0;  // accumulated relocations + alpha * Re-CNOTs
  std::vector<LayerTrace> trace;
};

// Beam scheduling over the blocks in order, with lookahead groups.
[[nodiscard]] ScheduleResult schedule_ums(const GateDag& dag, std::span<const Block> blocks, const Layout& initial,
                                          const Topology& topo, const CostParams& params, bool keep_trace = false);

}  // namespace athena

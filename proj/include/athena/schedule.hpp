#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "athena/arch.hpp"
#include "athena/circuit.hpp"
#include "athena/mapping.hpp"

namespace athena {

enum class OpKind { LocalCnot, Unary, Relocate, ReCnot };

[[nodiscard]] std::string_view to_string(OpKind kind) noexcept;
// Throws std::invalid_argument on unknown names.
[[nodiscard]] OpKind op_kind_from_string(std::string_view name);

// One timed operation. Relocate moves qubits[0] one hop from from_chip to
// to_chip; ReCnot runs gate `gate` with the control on from_chip and the target
// on to_chip; LocalCnot and Unary run on from_chip == to_chip.
struct Instruction {
  OpKind kind = OpKind::LocalCnot;
  std::array<int, 2> qubits{-1, -1};
  int from_chip = -1;
  int to_chip = -1;
  int gate = -1;   // gate executed, or the gate a relocation serves (-1 for none)
  int block = -1;
  bool eviction = false;
  Nanos start{0};
  Nanos duration{0};

  [[nodiscard]] Nanos end() const noexcept { return start + duration; }
  [[nodiscard]] bool is_teleport() const noexcept {
    return kind == OpKind::Relocate || kind == OpKind::ReCnot;
  }
  [[nodiscard]] int arity() const noexcept {
    return kind == OpKind::LocalCnot || kind == OpKind::ReCnot ? 2 : 1;
  }
  friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct Schedule {
  Layout initial;
  std::vector<Instruction> instructions;

  [[nodiscard]] Nanos makespan() const noexcept;
  [[nodiscard]] int relocations() const noexcept;
  [[nodiscard]] int recnots() const noexcept;
};

[[nodiscard]] Instruction make_relocate(int qubit, int from, int to, int gate, int block, bool eviction);
[[nodiscard]] Instruction make_local_cnot(const Gate& g, int chip, int block);
[[nodiscard]] Instruction make_recnot(const Gate& g, int control_chip, int target_chip, int block);

// Inserts every unary gate just before the next CNOT on its qubit; unary gates
// after a qubit's last CNOT go to the end. Unary gates inherit the block of the
// CNOT they precede, trailing ones the last block.
void insert_unaries(Schedule& schedule, const GateDag& dag);

// Fills every duration from the timing model by replaying the stream. Local
// CNOTs pay an atom move unless their operands sit in adjacent slots.
void assign_durations(Schedule& schedule, const Topology& topo);

// Layout after replaying the first `count` instructions.
[[nodiscard]] Layout replay_layout(const Schedule& schedule, std::size_t count);

}  // namespace athena

#include "athena/schedule.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace athena {

namespace {
constexpr std::array<std::string_view, 4> kOpNames{"cnot", "unary", "relocate", "recnot"};
}

std::string_view to_string(OpKind kind) noexcept { return kOpNames[static_cast<std::size_t>(kind)]; }

OpKind op_kind_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kOpNames.size(); ++i)
    if (kOpNames[i] == name) return static_cast<OpKind>(i);
  throw std::invalid_argument("unknown instruction kind '" + std::string(name) + "'");
}

Nanos Schedule::makespan() const noexcept {
  Nanos end{0};
  for (const auto& in : instructions) end = std::max(end, in.end());
  return end;
}

int Schedule::relocations() const noexcept {
  return static_cast<int>(std::count_if(instructions.begin(), instructions.end(),
                                        [](const Instruction& i) { return i.kind == OpKind::Relocate; }));
}

int Schedule::recnots() const noexcept {
  return static_cast<int>(std::count_if(instructions.begin(), instructions.end(),
                                        [](const Instruction& i) { return i.kind == OpKind::ReCnot; }));
}

Instruction make_relocate(int qubit, int from, int to, int gate, int block, bool eviction) {
  Instruction in;
  in.kind = OpKind::Relocate;
  in.qubits = {qubit, -1};
  in.from_chip = from;
  in.to_chip = to;
  in.gate = gate;
  in.block = block;
  in.eviction = eviction;
  return in;
}

Instruction make_local_cnot(const Gate& g, int chip, int block) {
  Instruction in;
  in.kind = OpKind::LocalCnot;
  in.qubits = {g.qubits[0], g.qubits[1]};
  in.from_chip = in.to_chip = chip;
  in.gate = g.id;
  in.block = block;
  return in;
}

Instruction make_recnot(const Gate& g, int control_chip, int target_chip, int block) {
  Instruction in;
  in.kind = OpKind::ReCnot;
  in.qubits = {g.qubits[0], g.qubits[1]};
  in.from_chip = control_chip;
  in.to_chip = target_chip;
  in.gate = g.id;
  in.block = block;
  return in;
}

void insert_unaries(Schedule& schedule, const GateDag& dag) {
  std::map<int, std::vector<int>> before;  // CNOT id -> unary ids preceding it
  std::vector<int> trailing;
  for (int q = 0; q < dag.qubit_count(); ++q) {
    std::vector<int> pending;
    for (int id : dag.qubit_gates(q)) {
      if (dag.gate(id).is_cnot()) {
        auto& list = before[id];
        list.insert(list.end(), pending.begin(), pending.end());
        pending.clear();
      } else {
        pending.push_back(id);
      }
    }
    trailing.insert(trailing.end(), pending.begin(), pending.end());
  }
  for (auto& [id, list] : before) std::sort(list.begin(), list.end());
  std::sort(trailing.begin(), trailing.end());

  Layout layout = schedule.initial;
  std::vector<Instruction> out;
  out.reserve(schedule.instructions.size() + dag.size());
  int last_block = 0;
  auto emit_unary = [&](int id, int block) {
    const auto& g = dag.gate(id);
    Instruction in;
    in.kind = OpKind::Unary;
    in.qubits = {g.qubits[0], -1};
    in.from_chip = in.to_chip = layout.chip(g.qubits[0]);
    in.gate = id;
    in.block = block;
    out.push_back(in);
  };
  for (const auto& in : schedule.instructions) {
    if (in.kind == OpKind::Unary) continue;
    last_block = std::max(last_block, in.block);
    if (in.kind == OpKind::LocalCnot || in.kind == OpKind::ReCnot) {
      if (auto it = before.find(in.gate); it != before.end())
        for (int id : it->second) emit_unary(id, in.block);
    }
    if (in.kind == OpKind::Relocate) layout.move(in.qubits[0], in.to_chip);
    out.push_back(in);
  }
  for (int id : trailing) emit_unary(id, last_block);
  schedule.instructions = std::move(out);
}

void assign_durations(Schedule& schedule, const Topology& topo) {
  const auto& t = topo.timing();
  const Nanos overhead = effective_epr_overhead(t);
  Layout layout = schedule.initial;
  for (auto& in : schedule.instructions) {
    switch (in.kind) {
      case OpKind::Unary:
        in.duration = t.one_qubit;
        break;
      case OpKind::LocalCnot: {
        const int a = layout.placement(in.qubits[0]).slot;
        const int b = layout.placement(in.qubits[1]).slot;
        in.duration = std::abs(a - b) == 1 ? t.two_qubit : t.two_qubit + t.atom_move;
        break;
      }
      case OpKind::Relocate:
        in.duration = overhead + t.relocate;
        layout.move(in.qubits[0], in.to_chip);
        break;
      case OpKind::ReCnot:
        in.duration = overhead + t.recnot;
        break;
    }
  }
}

Layout replay_layout(const Schedule& schedule, std::size_t count) {
  Layout layout = schedule.initial;
  for (std::size_t i = 0; i < count && i < schedule.instructions.size(); ++i) {
    const auto& in = schedule.instructions[i];
    if (in.kind == OpKind::Relocate) layout.move(in.qubits[0], in.to_chip);
  }
  return layout;
}

}  // namespace athena

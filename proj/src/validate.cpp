#include "athena/validate.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace athena {

std::string_view to_string(ViolationClass v) noexcept {
  constexpr std::array<std::string_view, 7> names{"dependency",     "location",         "capacity",    "adjacency",
                                                  "nonlocal_cnot", "resource_overlap", "missing_gate"};
  return names[static_cast<std::size_t>(v)];
}

std::optional<Violation> validate(const Schedule& schedule, const GateDag& dag, const Topology& topo) {
  const auto& stream = schedule.instructions;
  const Layout& initial = schedule.initial;
  const int nq = dag.qubit_count();
  const int chips = topo.chip_count();
  auto fail = [](ViolationClass k, int i, Nanos t, std::string msg) {
    return std::optional<Violation>(Violation{k, i, t, std::move(msg)});
  };

  if (initial.qubit_count() != nq)
    return fail(ViolationClass::MissingGate, -1, Nanos{0}, "initial layout covers a different qubit count");

  // Shape checks that do not depend on time.
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const auto& in = stream[i];
    const int idx = static_cast<int>(i);
    for (int k = 0; k < in.arity(); ++k) {
      const int q = in.qubits[static_cast<std::size_t>(k)];
      if (q < 0 || q >= nq) return fail(ViolationClass::MissingGate, idx, in.start, "qubit out of range");
    }
    if (in.from_chip < 0 || in.from_chip >= chips || in.to_chip < 0 || in.to_chip >= chips)
      return fail(ViolationClass::Location, idx, in.start, "chip out of range");
    if (in.duration <= Nanos{0})
      return fail(ViolationClass::ResourceOverlap, idx, in.start, "non-positive duration");
    if (in.kind == OpKind::Relocate) {
      if (in.gate >= static_cast<int>(dag.size())) return fail(ViolationClass::MissingGate, idx, in.start, "unknown gate");
      continue;
    }
    if (in.gate < 0 || in.gate >= static_cast<int>(dag.size()))
      return fail(ViolationClass::MissingGate, idx, in.start, "instruction names no gate");
    const auto& g = dag.gate(in.gate);
    const bool cnot_op = in.kind != OpKind::Unary;
    if (g.is_cnot() != cnot_op || g.qubits[0] != in.qubits[0] || (cnot_op && g.qubits[1] != in.qubits[1]))
      return fail(ViolationClass::MissingGate, idx, in.start,
                  "instruction does not match gate " + std::to_string(in.gate));
  }

  // (time, 0 = end / 1 = start, index)
  std::vector<std::tuple<Nanos, int, int>> events;
  events.reserve(stream.size() * 2);
  for (std::size_t i = 0; i < stream.size(); ++i) {
    events.emplace_back(stream[i].start, 1, static_cast<int>(i));
    events.emplace_back(stream[i].end(), 0, static_cast<int>(i));
  }
  std::sort(events.begin(), events.end());

  std::vector<int> loc(initial.chips().begin(), initial.chips().end());
  std::vector<int> busy(static_cast<std::size_t>(nq), -1);
  std::vector<int> occupancy(static_cast<std::size_t>(chips), 0);
  for (int c = 0; c < chips; ++c) occupancy[static_cast<std::size_t>(c)] = initial.external_count(c);
  std::vector<int> link_load(topo.edges().size(), 0);
  std::vector<char> done(dag.size(), 0);
  std::vector<char> started(dag.size(), 0);
  const int cap = topo.epr_capacity();

  for (const auto& [t, type, idx] : events) {
    const auto& in = stream[static_cast<std::size_t>(idx)];
    const auto qa = static_cast<std::size_t>(in.qubits[0]);
    if (type == 0) {
      for (int k = 0; k < in.arity(); ++k) busy[static_cast<std::size_t>(in.qubits[static_cast<std::size_t>(k)])] = -1;
      if (in.is_teleport()) --link_load[static_cast<std::size_t>(topo.edge_index(in.from_chip, in.to_chip))];
      if (in.kind == OpKind::Relocate) {
        loc[qa] = in.to_chip;
        if (in.from_chip != initial.home(in.qubits[0])) --occupancy[static_cast<std::size_t>(in.from_chip)];
      } else {
        if (in.kind == OpKind::ReCnot) --occupancy[static_cast<std::size_t>(in.to_chip)];
        done[static_cast<std::size_t>(in.gate)] = 1;
      }
      continue;
    }

    if (in.kind != OpKind::Relocate) {
      if (started[static_cast<std::size_t>(in.gate)])
        return fail(ViolationClass::MissingGate, idx, t, "gate " + std::to_string(in.gate) + " executed twice");
      started[static_cast<std::size_t>(in.gate)] = 1;
      for (int p : dag.predecessors(in.gate))
        if (!done[static_cast<std::size_t>(p)])
          return fail(ViolationClass::Dependency, idx, t,
                      "gate " + std::to_string(in.gate) + " starts before predecessor " + std::to_string(p) +
                          " completes");
    }

    switch (in.kind) {
      case OpKind::Relocate:
      case OpKind::Unary:
        if (loc[qa] != in.from_chip)
          return fail(ViolationClass::Location, idx, t,
                      "qubit " + std::to_string(in.qubits[0]) + " is on chip " + std::to_string(loc[qa]) +
                          ", not " + std::to_string(in.from_chip));
        break;
      case OpKind::LocalCnot: {
        const auto qb = static_cast<std::size_t>(in.qubits[1]);
        if (loc[qa] != loc[qb])
          return fail(ViolationClass::NonlocalCnot, idx, t,
                      "gate " + std::to_string(in.gate) + " operands on chips " + std::to_string(loc[qa]) + " and " +
                          std::to_string(loc[qb]));
        if (loc[qa] != in.from_chip)
          return fail(ViolationClass::Location, idx, t, "gate " + std::to_string(in.gate) + " runs on the wrong chip");
        break;
      }
      case OpKind::ReCnot: {
        const auto qb = static_cast<std::size_t>(in.qubits[1]);
        if (loc[qa] != in.from_chip || loc[qb] != in.to_chip)
          return fail(ViolationClass::Location, idx, t, "Re-CNOT operands are not on the named chips");
        break;
      }
    }
    if (in.is_teleport() && !topo.adjacent(in.from_chip, in.to_chip))
      return fail(ViolationClass::Adjacency, idx, t,
                  "chips " + std::to_string(in.from_chip) + " and " + std::to_string(in.to_chip) + " are not adjacent");

    const bool takes_slot = (in.kind == OpKind::Relocate && in.to_chip != initial.home(in.qubits[0])) ||
                            in.kind == OpKind::ReCnot;
    if (takes_slot && occupancy[static_cast<std::size_t>(in.to_chip)] + 1 > cap)
      return fail(ViolationClass::Capacity, idx, t,
                  "chip " + std::to_string(in.to_chip) + " exceeds EPR capacity " + std::to_string(cap));

    for (int k = 0; k < in.arity(); ++k) {
      const auto q = static_cast<std::size_t>(in.qubits[static_cast<std::size_t>(k)]);
      if (busy[q] >= 0)
        return fail(ViolationClass::ResourceOverlap, idx, t,
                    "qubit " + std::to_string(q) + " busy with instruction " + std::to_string(busy[q]));
    }
    if (in.is_teleport()) {
      auto& load = link_load[static_cast<std::size_t>(topo.edge_index(in.from_chip, in.to_chip))];
      if (load >= topo.links_per_edge())
        return fail(ViolationClass::ResourceOverlap, idx, t, "link between chips already in use");
      ++load;
    }
    for (int k = 0; k < in.arity(); ++k) busy[static_cast<std::size_t>(in.qubits[static_cast<std::size_t>(k)])] = idx;
    if (takes_slot) ++occupancy[static_cast<std::size_t>(in.to_chip)];
  }

  for (std::size_t g = 0; g < dag.size(); ++g)
    if (!started[g])
      return fail(ViolationClass::MissingGate, -1, schedule.makespan(), "gate " + std::to_string(g) + " never executed");
  return std::nullopt;
}

}  // namespace athena

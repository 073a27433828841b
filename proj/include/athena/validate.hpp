#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "athena/arch.hpp"
#include "athena/circuit.hpp"
#include "athena/schedule.hpp"

namespace athena {

enum class ViolationClass {
  Dependency,       // gate starts before a predecessor finished
  Location,         // operand or relocated qubit not where the instruction says
  Capacity,         // more externals plus proxies on a chip than slots
  Adjacency,        // teleport across non-adjacent chips
  NonlocalCnot,     // local CNOT whose operands are on different chips
  ResourceOverlap,  // qubit or link used by two instructions at once
  MissingGate,      // gate never executed, executed twice, or mislabelled
};

[[nodiscard]] std::string_view to_string(ViolationClass v) noexcept;

struct Violation {
  ViolationClass kind;
  int instruction = -1;  // stream index, -1 for whole-schedule findings
  Nanos time{0};
  std::string message;
};

// Replays the schedule in time order. Ends are applied before starts at equal
// times. Returns the first violation found, or nothing.
[[nodiscard]] std::optional<Violation> validate(const Schedule& schedule, const GateDag& dag, const Topology& topo);

}  // namespace athena

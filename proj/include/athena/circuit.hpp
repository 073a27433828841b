#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace athena {

enum class GateKind { Cnot, Unary };

struct Gate {
  int id = 0;
  GateKind kind = GateKind::Cnot;
  // Control first, then target for CNOTs; a single entry for unary gates.
  std::vector<int> qubits;
  std::string label;

  [[nodiscard]] bool is_cnot() const noexcept { return kind == GateKind::Cnot; }
  friend bool operator==(const Gate&, const Gate&) = default;
};

[[nodiscard]] inline Gate make_cnot(int control, int target) {
  return Gate{0, GateKind::Cnot, {control, target}, {}};
}
[[nodiscard]] inline Gate make_unary(int qubit, std::string label = "u") {
  return Gate{0, GateKind::Unary, {qubit}, std::move(label)};
}

enum class CircuitFormat { QasmLite, Json };

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column);
  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// Dependency DAG over gates. Edges link each gate to the previous gate on
// each of its qubits (last-writer chaining), so per-qubit order is total.
class GateDag {
 public:
  GateDag() = default;
  GateDag(int qubit_count, std::vector<Gate> gates);

  [[nodiscard]] int qubit_count() const noexcept { return qubit_count_; }
  [[nodiscard]] std::size_t size() const noexcept { return gates_.size(); }
  [[nodiscard]] bool empty() const noexcept { return gates_.empty(); }
  [[nodiscard]] std::span<const Gate> gates() const noexcept { return gates_; }
  [[nodiscard]] const Gate& gate(int id) const { return gates_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] std::span<const int> predecessors(int id) const;
  [[nodiscard]] std::span<const int> successors(int id) const;
  // Gates touching qubit q, in program order.
  [[nodiscard]] std::span<const int> qubit_gates(int q) const;
  [[nodiscard]] std::size_t cnot_count() const noexcept { return cnot_count_; }

 private:
  int qubit_count_ = 0;
  std::size_t cnot_count_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::vector<int>> preds_;
  std::vector<std::vector<int>> succs_;
  std::vector<std::vector<int>> per_qubit_;
};

// Renumbers ids densely in list order. qubit_count < 0 infers max id + 1.
[[nodiscard]] GateDag build_dag(std::vector<Gate> gates, int qubit_count = -1);

[[nodiscard]] GateDag parse_circuit(std::string_view source, CircuitFormat format);
[[nodiscard]] std::string emit_circuit(const GateDag& dag, CircuitFormat format);
[[nodiscard]] CircuitFormat circuit_format_for_path(std::string_view path);

// Gates not in `done` whose predecessors are all in `done`, ascending by id.
// Throws std::invalid_argument when `done` is not dependency-closed.
[[nodiscard]] std::vector<int> frontier(const GateDag& dag, const std::vector<bool>& done);

}  // namespace athena

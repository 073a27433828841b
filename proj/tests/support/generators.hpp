#pragma once

// Hand-rolled random instance generators shared by property tests and the
// acceptance run. Everything is a pure function of the seed.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "athena/arch.hpp"
#include "athena/circuit.hpp"
#include "athena/mapping.hpp"

namespace athena::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  template <class T>
  void shuffle(std::vector<T>& xs) {
    std::shuffle(xs.begin(), xs.end(), engine_);
  }

 private:
  std::mt19937_64 engine_;
};

struct Instance {
  Topology topo;
  GateDag dag;
  Layout layout;
};

struct InstanceShape {
  int min_chips = 2;
  int max_chips = 3;
  int min_qubits = 3;
  int max_qubits = 8;
  int min_cnots = 3;
  int max_cnots = 12;
  int min_capacity = 1;
  int max_capacity = 2;
  double unary_rate = 0.0;  // chance of a unary gate before each CNOT
  bool grid = false;        // 2x2 when four chips are drawn, else a line
};

// Chips in a line (or a 2x2 grid), compute slots just large enough for the
// program, random CNOTs, and a random initial placement within capacity.
inline Instance random_instance(std::uint64_t seed, const InstanceShape& shape = {}) {
  Rng rng(seed);
  const int chips = rng.between(shape.min_chips, shape.max_chips);
  const int qubits = rng.between(std::max(shape.min_qubits, 2), shape.max_qubits);
  const int cnots = rng.between(shape.min_cnots, shape.max_cnots);
  const int capacity = rng.between(shape.min_capacity, shape.max_capacity);
  const int compute = (qubits + chips - 1) / chips + rng.between(0, 1);

  TopologySpec spec;
  if (shape.grid && chips == 4) {
    spec.rows = 2;
    spec.cols = 2;
  } else {
    spec.rows = 1;
    spec.cols = chips;
  }
  spec.qubits_per_chip = compute + capacity;
  spec.compute_fraction = static_cast<double>(compute) / spec.qubits_per_chip + 1e-6;
  Topology topo(spec);

  std::vector<Gate> gates;
  for (int i = 0; i < cnots; ++i) {
    if (shape.unary_rate > 0.0 && rng.coin(shape.unary_rate)) gates.push_back(make_unary(rng.between(0, qubits - 1)));
    const int a = rng.between(0, qubits - 1);
    int b = rng.between(0, qubits - 2);
    if (b >= a) ++b;
    gates.push_back(make_cnot(a, b));
  }
  auto dag = build_dag(std::move(gates), qubits);

  std::vector<int> slots;
  for (int c = 0; c < topo.chip_count(); ++c)
    for (int k = 0; k < topo.compute_qubits(); ++k) slots.push_back(c);
  rng.shuffle(slots);
  std::vector<int> home(slots.begin(), slots.begin() + qubits);
  Layout layout(topo, home);
  return {std::move(topo), std::move(dag), std::move(layout)};
}

}  // namespace athena::testing

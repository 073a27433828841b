#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace athena {

using Nanos = std::chrono::nanoseconds;

// Rounds to the nearest nanosecond.
[[nodiscard]] Nanos from_micros(double us);
[[nodiscard]] double to_micros(Nanos t) noexcept;
[[nodiscard]] double to_millis(Nanos t) noexcept;

struct TimingModel {
  Nanos one_qubit{52'000};
  Nanos two_qubit{360};
  Nanos atom_transfer{15'000};
  Nanos atom_move{300'000};
  Nanos measure{1'000'000};
  Nanos epr_gen{259'000};
  Nanos relocate{1'300'000};  // per hop
  Nanos recnot{2'300'000};
  // Fraction of EPR generation overlapped with earlier work, in [0, 1].
  double epr_hide = 1.0;

  [[nodiscard]] double alpha_derived() const noexcept {
    return static_cast<double>(recnot.count()) / static_cast<double>(relocate.count());
  }
  void check() const;
};

struct EprModel {
  double p_attempt = 0.125;
  int n_attempts = 52;
  Nanos load{100'000};
  Nanos pump{1'100};
  Nanos bsm_per_attempt{1'000};
  Nanos depump{6'000};
  Nanos unload{100'000};

  void check() const;
};

[[nodiscard]] double epr_success_prob(const EprModel& model, int n);
[[nodiscard]] Nanos epr_generation_latency(const EprModel& model);
// EPR generation time left on each teleport's critical path.
[[nodiscard]] Nanos effective_epr_overhead(const TimingModel& timing);

struct TopologySpec {
  int rows = 1;
  int cols = 1;
  int qubits_per_chip = 0;
  double compute_fraction = 0.9;
  int links_per_edge = 1;
  // Empty means the nearest-neighbour grid.
  std::vector<std::pair<int, int>> edges;
  TimingModel timing;
  EprModel epr;
};

class Topology {
 public:
  Topology() = default;
  explicit Topology(TopologySpec spec);

  [[nodiscard]] const TopologySpec& spec() const noexcept { return spec_; }
  [[nodiscard]] int rows() const noexcept { return spec_.rows; }
  [[nodiscard]] int cols() const noexcept { return spec_.cols; }
  [[nodiscard]] int chip_count() const noexcept { return chips_; }
  [[nodiscard]] int chip_qubits() const noexcept { return spec_.qubits_per_chip; }
  [[nodiscard]] int compute_qubits() const noexcept { return compute_; }
  [[nodiscard]] int epr_capacity() const noexcept { return spec_.qubits_per_chip - compute_; }
  [[nodiscard]] int links_per_edge() const noexcept { return spec_.links_per_edge; }
  [[nodiscard]] const TimingModel& timing() const noexcept { return spec_.timing; }
  [[nodiscard]] const EprModel& epr() const noexcept { return spec_.epr; }

  [[nodiscard]] int hops(int a, int b) const;
  [[nodiscard]] bool adjacent(int a, int b) const { return hops(a, b) == 1; }
  [[nodiscard]] const std::vector<int>& neighbors(int chip) const;
  // Undirected edges (a < b), sorted.
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const noexcept { return edges_; }
  [[nodiscard]] int edge_index(int a, int b) const;
  // Chips from a to b inclusive along a shortest path; lowest-id next hop on ties.
  [[nodiscard]] std::vector<int> shortest_path(int a, int b) const;

  // Copy with a different hiding fraction.
  [[nodiscard]] Topology with_epr_hide(double h) const;

 private:
  TopologySpec spec_;
  int chips_ = 0;
  int compute_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> dist_;      // chips_ x chips_
  std::vector<int> next_hop_;  // chips_ x chips_
  std::vector<int> edge_id_;   // chips_ x chips_, -1 when not adjacent
};

// Parses TOML, or JSON when the first non-blank character is '{'.
[[nodiscard]] Topology load_topology(std::string_view source);

// Grid whose chips hold ceil(program_qubits / chips) compute qubits plus
// `epr_capacity` communication qubits.
[[nodiscard]] Topology desk_topology(int program_qubits, int rows, int cols, int epr_capacity);

[[nodiscard]] std::string topology_to_toml(const Topology& topo);

}  // namespace athena

#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "athena/arch.hpp"
#include "athena/circuit.hpp"

namespace athena {

struct Placement {
  int chip = -1;
  int slot = -1;
  friend bool operator==(const Placement&, const Placement&) = default;
};

// Where every program qubit currently lives. A qubit away from its home chip
// is an external resident and holds one communication slot there; compute
// slots stay reserved for their owners.
class Layout {
 public:
  Layout() = default;
  // Packs each chip's qubits into compute slots in id order.
  Layout(const Topology& topo, std::vector<int> home_chip);

  [[nodiscard]] int qubit_count() const noexcept { return static_cast<int>(home_.size()); }
  [[nodiscard]] int chip_count() const noexcept { return static_cast<int>(external_count_.size()); }
  [[nodiscard]] int home(int q) const { return home_[static_cast<std::size_t>(q)]; }
  [[nodiscard]] int chip(int q) const { return chip_[static_cast<std::size_t>(q)]; }
  [[nodiscard]] bool is_external(int q) const { return chip(q) != home(q); }
  [[nodiscard]] Placement placement(int q) const;
  [[nodiscard]] int capacity() const noexcept { return capacity_; }
  [[nodiscard]] int compute_qubits() const noexcept { return compute_; }
  [[nodiscard]] int external_count(int c) const { return external_count_[static_cast<std::size_t>(c)]; }
  [[nodiscard]] int free_slots(int c) const { return capacity_ - external_count(c); }
  // True when q may arrive at chip c without evicting anyone.
  [[nodiscard]] bool can_host(int q, int c) const { return c == home(q) || chip(q) == c || free_slots(c) > 0; }
  // External residents of chip c, ascending.
  [[nodiscard]] std::vector<int> externals(int c) const;

  // Moves q to chip c. Throws std::logic_error when c has no free slot.
  void move(int q, int c);

  // Hash of the qubit-to-chip map; communication slot identity is ignored.
  [[nodiscard]] std::uint64_t hash() const noexcept;
  [[nodiscard]] bool same_chips(const Layout& other) const noexcept { return chip_ == other.chip_; }
  [[nodiscard]] std::span<const int> chips() const noexcept { return chip_; }
  [[nodiscard]] std::span<const int> homes() const noexcept { return home_; }

 private:
  int capacity_ = 0;
  int compute_ = 0;
  std::vector<int> home_;
  std::vector<int> home_slot_;
  std::vector<int> chip_;
  std::vector<int> comm_slot_;                 // -1 while at home
  std::vector<int> external_count_;
  std::vector<std::vector<int>> comm_holder_;  // chip -> slot -> qubit or -1
};

class InteractionGraph {
 public:
  struct Edge {
    int to;
    int weight;
  };

  explicit InteractionGraph(int nodes = 0);
  [[nodiscard]] static InteractionGraph from_dag(const GateDag& dag);

  void add_weight(int u, int v, int w);
  [[nodiscard]] int node_count() const noexcept { return static_cast<int>(adj_.size()); }
  [[nodiscard]] std::span<const Edge> neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }
  [[nodiscard]] int weight(int u, int v) const;
  [[nodiscard]] long long cut_weight(std::span<const int> part) const;

 private:
  std::vector<std::vector<Edge>> adj_;  // sorted by `to`
};

// Balanced min-cut partition by multilevel recursive bisection with FM
// refinement. Part p holds at most capacity[p] nodes. Deterministic in seed.
[[nodiscard]] std::vector<int> partition_mincut(const InteractionGraph& graph, int parts,
                                                std::span<const int> capacity, std::uint64_t seed);

// Square matrix of inter-part weights.
using PartWeights = std::vector<std::vector<long long>>;

[[nodiscard]] PartWeights part_weights(const InteractionGraph& graph, std::span<const int> part, int parts);
[[nodiscard]] long long assignment_cost(const PartWeights& w, std::span<const int> chip_of_part,
                                        const Topology& topo);
// Injective part -> chip map minimising sum of w(p, q) * hops. Exact for up to
// nine chips, simulated annealing beyond.
[[nodiscard]] std::vector<int> assign_chips(const PartWeights& w, const Topology& topo,
                                            std::uint64_t seed = 1);

[[nodiscard]] Layout initial_layout(std::span<const int> chip_of_qubit, const Topology& topo);

enum class MapperKind { MinCut, Trivial };

[[nodiscard]] std::string_view to_string(MapperKind m) noexcept;
// Accepts mincut and trivial.
[[nodiscard]] MapperKind mapper_from_string(std::string_view name);

[[nodiscard]] Layout map_program(const GateDag& dag, const Topology& topo, MapperKind mapper,
                                 std::uint64_t seed);

}  // namespace athena

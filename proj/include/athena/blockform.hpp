#pragma once

#include <limits>
#include <span>
#include <vector>

#include "athena/arch.hpp"
#include "athena/circuit.hpp"
#include "athena/mapping.hpp"

namespace athena {

inline constexpr double kInfeasible = std::numeric_limits<double>::infinity();

struct CostParams {
  double alpha = 1.77;     // Re-CNOT cost relative to one relocation hop
  double beta = 0.871;     // lookahead decay per block of distance
  int beam = 16;           // candidates kept per layer
  int window = 4;          // lookahead blocks beyond the current one
  int max_block = 64;      // gate cap during block fusion

  void check() const;
};

struct Block {
  int id = 0;
  std::vector<int> gates;   // CNOT ids in program order
  std::vector<int> qubits;  // ascending
  int chip = -1;            // cheapest chip on the layout the block was formed against
  std::vector<double> chip_cost;
};

// Cost of executing the CNOTs `gates` on `chip`: relocation hops for every
// operand not already there, with Re-CNOTs substituted for single-use
// operands on adjacent chips when the chip's communication slots run out.
// kInfeasible when no substitution fits the capacity.
[[nodiscard]] double block_cost(const GateDag& dag, std::span<const int> gates, const Layout& layout,
                                int chip, const Topology& topo, double alpha);

struct ChipCost {
  double cost = kInfeasible;
  int chip = -1;
};
// Cheapest chip; ties go to the lower chip id.
[[nodiscard]] ChipCost block_min_cost(const GateDag& dag, std::span<const int> gates, const Layout& layout,
                                      const Topology& topo, double alpha);

struct FusionRecord {
  double cost_current;
  double cost_candidates;
  double cost_merged;
  bool accepted;
};

struct BlockFormation {
  std::vector<Block> blocks;
  std::vector<FusionRecord> fusions;
};

[[nodiscard]] BlockFormation form_blocks(const GateDag& dag, const Layout& layout, const Topology& topo,
                                         const CostParams& params);

// One block per CNOT, in program order.
[[nodiscard]] std::vector<Block> singleton_blocks(const GateDag& dag);

[[nodiscard]] std::vector<int> overlap_qubits(const Block& a, const Block& b);

}  // namespace athena

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "athena/circuit.hpp"

namespace athena {

enum class Family { Qaoa3Reg, QaoaFc, QftLike, QvLike, BvLike };

[[nodiscard]] std::string_view to_string(Family f) noexcept;
// Accepts qaoa-3reg, qaoa-fc, qft-like, qv-like, bv-like.
[[nodiscard]] Family family_from_string(std::string_view name);
[[nodiscard]] std::vector<Family> all_families();

struct GeneratorOptions {
  int layers = 2;  // QAOA rounds
};

// Deterministic per (family, qubits, seed, options). Requires qubits >= 4 and
// an even count for qaoa-3reg.
[[nodiscard]] GateDag generate_benchmark(Family family, int qubits, std::uint64_t seed,
                                         const GeneratorOptions& options = {});

// Edges of a uniformly sampled simple 3-regular graph (pairing model with
// rejection), each as (u, v) with u < v, sorted.
[[nodiscard]] std::vector<std::pair<int, int>> random_3_regular(int n, std::uint64_t seed);

}  // namespace athena

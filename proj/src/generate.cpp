#include "athena/generate.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <stdexcept>

namespace athena {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kNames{{{Family::Qaoa3Reg, "qaoa-3reg"},
                                                                      {Family::QaoaFc, "qaoa-fc"},
                                                                      {Family::QftLike, "qft-like"},
                                                                      {Family::QvLike, "qv-like"},
                                                                      {Family::BvLike, "bv-like"}}};

// Bounded draws and shuffles written out so sequences do not depend on the
// standard library's distribution implementations.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

template <class T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

}  // namespace

std::string_view to_string(Family f) noexcept {
  for (const auto& [fam, name] : kNames)
    if (fam == f) return name;
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (const auto& [fam, n] : kNames)
    if (n == name) return fam;
  throw std::invalid_argument("unknown benchmark family '" + std::string(name) + "'");
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const auto& [fam, name] : kNames) out.push_back(fam);
  return out;
}

std::vector<std::pair<int, int>> random_3_regular(int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("3-regular graphs need an even vertex count >= 4");
  std::mt19937_64 rng(seed);
  std::vector<int> points(static_cast<std::size_t>(3 * n));
  for (;;) {
    for (int i = 0; i < 3 * n; ++i) points[static_cast<std::size_t>(i)] = i / 3;
    shuffle(points, rng);
    std::set<std::pair<int, int>> edges;
    bool simple = true;
    for (std::size_t i = 0; i < points.size() && simple; i += 2) {
      const int u = std::min(points[i], points[i + 1]);
      const int v = std::max(points[i], points[i + 1]);
      simple = u != v && edges.emplace(u, v).second;
    }
    if (simple) return {edges.begin(), edges.end()};
  }
}

GateDag generate_benchmark(Family family, int qubits, std::uint64_t seed, const GeneratorOptions& options) {
  if (qubits < 4) throw std::invalid_argument("benchmarks need at least 4 qubits");
  if (options.layers < 1) throw std::invalid_argument("layers must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Gate> gates;
  auto unary = [&](int q, const char* label) { gates.push_back(make_unary(q, label)); };
  auto cx = [&](int c, int t) { gates.push_back(make_cnot(c, t)); };

  switch (family) {
    case Family::Qaoa3Reg: {
      if (qubits % 2 != 0) throw std::invalid_argument("qaoa-3reg needs an even qubit count");
      const auto edges = random_3_regular(qubits, rng());
      for (int q = 0; q < qubits; ++q) unary(q, "h");
      for (int l = 0; l < options.layers; ++l) {
        for (const auto& [u, v] : edges) {
          cx(u, v);
          unary(v, "rz");
        }
        for (int q = 0; q < qubits; ++q) unary(q, "rx");
      }
      break;
    }
    case Family::QaoaFc:
      for (int q = 0; q < qubits; ++q) unary(q, "h");
      for (int l = 0; l < options.layers; ++l) {
        for (int u = 0; u < qubits; ++u)
          for (int v = u + 1; v < qubits; ++v) {
            cx(u, v);
            unary(v, "rz");
          }
        for (int q = 0; q < qubits; ++q) unary(q, "rx");
      }
      break;
    case Family::QftLike:
      for (int i = 0; i < qubits; ++i) {
        unary(i, "h");
        for (int j = i + 1; j < qubits; ++j) {
          cx(j, i);
          unary(i, "rz");
        }
      }
      break;
    case Family::QvLike: {
      std::vector<int> order(static_cast<std::size_t>(qubits));
      for (int layer = 0; layer < qubits; ++layer) {
        for (int q = 0; q < qubits; ++q) order[static_cast<std::size_t>(q)] = q;
        shuffle(order, rng);
        for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
          unary(order[i], "u3");
          unary(order[i + 1], "u3");
          cx(order[i], order[i + 1]);
        }
      }
      break;
    }
    case Family::BvLike: {
      std::vector<int> secret;
      for (int q = 1; q < qubits; ++q)
        if (below(rng, 2) == 1) secret.push_back(q);
      if (secret.empty()) secret.push_back(1 + static_cast<int>(below(rng, static_cast<std::uint64_t>(qubits - 1))));
      for (int q = 0; q < qubits; ++q) unary(q, "h");
      for (int q : secret) cx(q, 0);
      for (int q = 0; q < qubits; ++q) unary(q, "h");
      break;
    }
  }
  return GateDag(qubits, std::move(gates));
}

}  // namespace athena

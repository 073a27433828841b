#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "athena/mapping.hpp"
#include "support/generators.hpp"

namespace athena {
namespace {

Topology grid(int rows, int cols, int compute = 4, int capacity = 2) {
  TopologySpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.qubits_per_chip = compute + capacity;
  spec.compute_fraction = static_cast<double>(compute) / spec.qubits_per_chip + 1e-6;
  return Topology(spec);
}

std::vector<int> part_sizes(std::span<const int> part, int parts) {
  std::vector<int> sizes(static_cast<std::size_t>(parts), 0);
  for (int p : part) ++sizes[static_cast<std::size_t>(p)];
  return sizes;
}

// Every balanced 2-way split of n nodes.
long long best_bisection(const InteractionGraph& g) {
  const int n = g.node_count();
  long long best = -1;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != n / 2) continue;
    std::vector<int> part(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) part[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
    const long long cut = g.cut_weight(part);
    if (best < 0 || cut < best) best = cut;
  }
  return best;
}

TEST(Mapping, TwoCliquesSplitOnBridge) {
  InteractionGraph g(8);
  for (int base : {0, 4})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) g.add_weight(base + i, base + j, 1);
  g.add_weight(3, 4, 1);
  const std::vector<int> cap{4, 4};
  const auto part = partition_mincut(g, 2, cap, 1);
  EXPECT_EQ(g.cut_weight(part), 1);
  EXPECT_EQ(part_sizes(part, 2), (std::vector<int>{4, 4}));
}

TEST(Mapping, RingMatchesExhaustive) {
  InteractionGraph g(8);
  for (int i = 0; i < 8; ++i) g.add_weight(i, (i + 1) % 8, 1);
  const std::vector<int> cap{4, 4};
  const auto part = partition_mincut(g, 2, cap, 3);
  EXPECT_EQ(best_bisection(g), 2);
  EXPECT_EQ(g.cut_weight(part), 2);
}

TEST(Mapping, RandomGraphBeatsRandomPartitions) {
  testing::Rng rng(5);
  InteractionGraph g(12);
  for (int e = 0; e < 30; ++e) {
    const int u = rng.between(0, 11);
    int v = rng.between(0, 10);
    if (v >= u) ++v;
    g.add_weight(u, v, rng.between(1, 3));
  }
  const std::vector<int> cap{4, 4, 4};
  const auto part = partition_mincut(g, 3, cap, 7);
  for (int s : part_sizes(part, 3)) EXPECT_LE(s, 4);
  std::vector<int> balanced{0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2};
  long long best_random = -1;
  for (int trial = 0; trial < 1000; ++trial) {
    rng.shuffle(balanced);
    const long long cut = g.cut_weight(balanced);
    if (best_random < 0 || cut < best_random) best_random = cut;
  }
  EXPECT_LE(g.cut_weight(part), best_random);
}

TEST(Mapping, PartitionRespectsCapacityAndSeed) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    testing::Rng rng(seed);
    const int n = rng.between(4, 30);
    const int parts = rng.between(2, 5);
    InteractionGraph g(n);
    for (int e = 0; e < 2 * n; ++e) {
      const int u = rng.between(0, n - 1);
      int v = rng.between(0, n - 2);
      if (v >= u) ++v;
      g.add_weight(u, v, 1);
    }
    std::vector<int> cap(static_cast<std::size_t>(parts), (n + parts - 1) / parts);
    const auto a = partition_mincut(g, parts, cap, seed);
    const auto b = partition_mincut(g, parts, cap, seed);
    EXPECT_EQ(a, b);
    const auto sizes = part_sizes(a, parts);
    for (int p = 0; p < parts; ++p) EXPECT_LE(sizes[static_cast<std::size_t>(p)], cap[static_cast<std::size_t>(p)]);
  }
  InteractionGraph g(5);
  const std::vector<int> small{2, 2};
  EXPECT_THROW((void)partition_mincut(g, 2, small, 1), std::invalid_argument);
}

TEST(Mapping, InteractionGraphCountsCnots) {
  const auto dag = build_dag({make_cnot(0, 1), make_cnot(1, 0), make_unary(2), make_cnot(1, 2)}, 3);
  const auto g = InteractionGraph::from_dag(dag);
  EXPECT_EQ(g.weight(0, 1), 2);
  EXPECT_EQ(g.weight(1, 0), 2);
  EXPECT_EQ(g.weight(1, 2), 1);
  EXPECT_EQ(g.weight(0, 2), 0);
}

TEST(Mapping, MiddlePartTakesMiddleChip) {
  const auto topo = grid(1, 3);
  const PartWeights w{{0, 5, 0}, {5, 0, 5}, {0, 5, 0}};
  const auto chips = assign_chips(w, topo);
  EXPECT_EQ(chips[1], 1);
}

TEST(Mapping, SingleChipIdentity) {
  const auto topo = grid(1, 1);
  EXPECT_EQ(assign_chips(PartWeights{{0}}, topo), std::vector<int>{0});
}

TEST(Mapping, AssignmentIsExhaustiveOptimum) {
  for (const auto& topo : {grid(2, 2), grid(2, 3), grid(1, 4)}) {
    const int n = topo.chip_count();
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      testing::Rng rng(seed);
      PartWeights w(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = rng.between(0, 9);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      long long best = -1;
      do {
        const long long c = assignment_cost(w, perm, topo);
        if (best < 0 || c < best) best = c;
      } while (std::next_permutation(perm.begin(), perm.end()));
      const auto chosen = assign_chips(w, topo, seed);
      EXPECT_EQ(assignment_cost(w, chosen, topo), best);
      auto sorted = chosen;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end()) << "not injective";
    }
  }
}

TEST(Mapping, StarCentreSitsNextToHeavyPartners) {
  const auto topo = grid(2, 2);
  // Part 0 talks to 1 and 2 heavily, to 3 lightly.
  const PartWeights w{{0, 9, 9, 1}, {9, 0, 0, 0}, {9, 0, 0, 0}, {1, 0, 0, 0}};
  const auto chips = assign_chips(w, topo);
  EXPECT_TRUE(topo.adjacent(chips[0], chips[1]));
  EXPECT_TRUE(topo.adjacent(chips[0], chips[2]));
}

TEST(Mapping, InitialLayoutPacksById) {
  const auto topo = grid(1, 3, 4, 2);
  const std::vector<int> chips{0, 0, 1, 1, 2, 2};
  const auto layout = initial_layout(chips, topo);
  EXPECT_EQ(layout.placement(0), (Placement{0, 0}));
  EXPECT_EQ(layout.placement(1), (Placement{0, 1}));
  EXPECT_EQ(layout.placement(5), (Placement{2, 1}));
  for (int c = 0; c < 3; ++c) {
    EXPECT_TRUE(layout.externals(c).empty());
    EXPECT_EQ(layout.free_slots(c), 2);
  }
  EXPECT_EQ(initial_layout(std::vector<int>{}, topo).qubit_count(), 0);
  EXPECT_THROW((void)initial_layout(std::vector<int>{0, 0, 0, 0, 0}, topo), std::invalid_argument);
}

TEST(Mapping, LayoutTracksExternals) {
  const auto topo = grid(1, 3, 2, 1);
  Layout layout(topo, {0, 0, 1, 1});
  layout.move(0, 1);
  EXPECT_TRUE(layout.is_external(0));
  EXPECT_EQ(layout.externals(1), std::vector<int>{0});
  EXPECT_EQ(layout.free_slots(1), 0);
  EXPECT_FALSE(layout.can_host(1, 1));
  EXPECT_TRUE(layout.can_host(2, 1));
  EXPECT_THROW(layout.move(1, 1), std::logic_error);
  const auto before = layout.hash();
  layout.move(0, 0);
  EXPECT_EQ(layout.free_slots(1), 1);
  EXPECT_NE(layout.hash(), before);
  EXPECT_EQ(layout.hash(), Layout(topo, {0, 0, 1, 1}).hash());
}

TEST(Mapping, MapProgramFillsChips) {
  const auto topo = grid(2, 2, 4, 2);
  const auto dag = build_dag({make_cnot(0, 1), make_cnot(2, 3), make_cnot(4, 5), make_cnot(6, 7), make_cnot(1, 2)}, 10);
  for (const auto kind : {MapperKind::MinCut, MapperKind::Trivial}) {
    const auto layout = map_program(dag, topo, kind, 7);
    EXPECT_EQ(layout.qubit_count(), 10);
    std::vector<int> load(4, 0);
    for (int q = 0; q < 10; ++q) ++load[static_cast<std::size_t>(layout.home(q))];
    for (int l : load) EXPECT_LE(l, 4);
  }
  const auto a = map_program(dag, topo, MapperKind::MinCut, 3);
  const auto b = map_program(dag, topo, MapperKind::MinCut, 3);
  EXPECT_TRUE(a.same_chips(b));
  const auto big = build_dag({make_cnot(0, 20)}, 21);
  EXPECT_THROW((void)map_program(big, topo, MapperKind::MinCut, 1), std::invalid_argument);
  EXPECT_EQ(mapper_from_string("trivial"), MapperKind::Trivial);
  EXPECT_THROW((void)mapper_from_string("soee"), std::invalid_argument);
}

}  // namespace
}  // namespace athena

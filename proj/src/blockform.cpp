#include "athena/blockform.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <stdexcept>

namespace athena {

void CostParams::check() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (beam < 1) throw std::invalid_argument("beam width must be >= 1");
  if (window < 0) throw std::invalid_argument("window must be >= 0");
  if (max_block < 1) throw std::invalid_argument("max block size must be >= 1");
}

double block_cost(const GateDag& dag, std::span<const int> gates, const Layout& layout, int chip,
                  const Topology& topo, double alpha) {
  // qubit -> (uses, partner in its first gate)
  std::map<int, std::pair<int, int>> uses;
  for (int id : gates) {
    const auto& g = dag.gate(id);
    for (int i = 0; i < 2; ++i) {
      auto [it, fresh] = uses.try_emplace(g.qubits[static_cast<std::size_t>(i)], 0, g.qubits[static_cast<std::size_t>(1 - i)]);
      ++it->second.first;
      (void)fresh;
    }
  }
  std::vector<int> movers;
  for (const auto& [q, u] : uses)
    if (layout.chip(q) != chip) movers.push_back(q);

  int persistent = layout.external_count(chip);
  for (int q : movers)
    if (layout.home(q) != chip) ++persistent;

  const int cap = layout.capacity();
  std::vector<int> substituted;
  bool proxy_here = false;
  auto is_sub = [&](int q) { return std::find(substituted.begin(), substituted.end(), q) != substituted.end(); };
  for (int q : movers) {
    const bool binding = persistent + (proxy_here ? 1 : 0) > cap;
    if (!binding && !(alpha < 1.0)) break;
    const auto [count, partner] = uses.at(q);
    if (count != 1 || !topo.adjacent(layout.chip(q), chip) || is_sub(partner)) continue;
    if (layout.chip(partner) != chip &&
        std::find(movers.begin(), movers.end(), partner) == movers.end())
      continue;
    // Re-CNOT proxies sit on the target's chip for the gate's duration.
    const auto& g = [&]() -> const Gate& {
      for (int id : gates) {
        const auto& cand = dag.gate(id);
        if (cand.qubits[0] == q || cand.qubits[1] == q) return cand;
      }
      throw std::logic_error("qubit not in block");
    }();
    const bool q_is_control = g.qubits[0] == q;
    if (!q_is_control && layout.free_slots(layout.chip(q)) < 1) continue;
    if (layout.home(q) == chip && !(alpha < 1.0)) continue;
    substituted.push_back(q);
    if (layout.home(q) != chip) --persistent;
    if (q_is_control) proxy_here = true;
  }
  if (persistent + (proxy_here ? 1 : 0) > cap) return kInfeasible;

  double cost = 0.0;
  for (int q : movers) cost += is_sub(q) ? alpha : topo.hops(layout.chip(q), chip);
  return cost;
}

ChipCost block_min_cost(const GateDag& dag, std::span<const int> gates, const Layout& layout,
                        const Topology& topo, double alpha) {
  ChipCost best;
  for (int c = 0; c < topo.chip_count(); ++c) {
    const double cost = block_cost(dag, gates, layout, c, topo, alpha);
    if (cost < best.cost) best = {cost, c};
  }
  return best;
}

namespace {

std::vector<int> qubits_of(const GateDag& dag, std::span<const int> gates) {
  std::vector<int> qs;
  for (int id : gates)
    for (int q : dag.gate(id).qubits) qs.push_back(q);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

Block make_block(const GateDag& dag, int id, std::vector<int> gates, const Layout& layout, const Topology& topo,
                 double alpha) {
  Block b;
  b.id = id;
  b.gates = std::move(gates);
  b.qubits = qubits_of(dag, b.gates);
  b.chip_cost.resize(static_cast<std::size_t>(topo.chip_count()));
  double best = kInfeasible;
  for (int c = 0; c < topo.chip_count(); ++c) {
    b.chip_cost[static_cast<std::size_t>(c)] = block_cost(dag, b.gates, layout, c, topo, alpha);
    if (b.chip_cost[static_cast<std::size_t>(c)] < best) {
      best = b.chip_cost[static_cast<std::size_t>(c)];
      b.chip = c;
    }
  }
  return b;
}

}  // namespace

BlockFormation form_blocks(const GateDag& dag, const Layout& layout, const Topology& topo,
                           const CostParams& params) {
  params.check();
  const auto n = dag.size();
  // CNOT-level view: unary gates never join blocks and do not gate fusion.
  std::vector<std::vector<int>> cnots_on(static_cast<std::size_t>(dag.qubit_count()));
  std::vector<std::array<int, 2>> cnot_pred(n, {-1, -1});
  for (const auto& g : dag.gates()) {
    if (!g.is_cnot()) continue;
    for (int i = 0; i < 2; ++i) {
      auto& list = cnots_on[static_cast<std::size_t>(g.qubits[static_cast<std::size_t>(i)])];
      cnot_pred[static_cast<std::size_t>(g.id)][static_cast<std::size_t>(i)] = list.empty() ? -1 : list.back();
      list.push_back(g.id);
    }
  }
  std::vector<std::size_t> head(static_cast<std::size_t>(dag.qubit_count()), 0);
  // 0 unassigned, 1 in C, 2 in D, 3 assigned
  std::vector<char> state(n, 0);
  for (const auto& g : dag.gates())
    if (!g.is_cnot()) state[static_cast<std::size_t>(g.id)] = 3;

  auto satisfied = [&](int id) {
    for (int p : cnot_pred[static_cast<std::size_t>(id)])
      if (p >= 0 && state[static_cast<std::size_t>(p)] == 0) return false;
    return true;
  };
  auto head_of = [&](int q) {
    auto& h = head[static_cast<std::size_t>(q)];
    const auto& list = cnots_on[static_cast<std::size_t>(q)];
    while (h < list.size() && state[static_cast<std::size_t>(list[h])] == 3) ++h;
    for (std::size_t i = h; i < list.size(); ++i)
      if (state[static_cast<std::size_t>(list[i])] == 0) return list[i];
    return -1;
  };

  BlockFormation out;
  std::size_t next_start = 0;
  while (true) {
    while (next_start < n && state[next_start] != 0) ++next_start;
    if (next_start == n) break;
    std::vector<int> current{static_cast<int>(next_start)};
    state[next_start] = 1;

    while (true) {
      const auto cq = qubits_of(dag, current);
      std::vector<int> cand;
      const std::size_t room = static_cast<std::size_t>(params.max_block) - current.size();
      while (cand.size() < room) {
        int pick = -1;
        for (int q : cq) {
          const int h = head_of(q);
          if (h >= 0 && satisfied(h) && (pick < 0 || h < pick)) pick = h;
        }
        if (pick < 0) break;
        state[static_cast<std::size_t>(pick)] = 2;
        cand.push_back(pick);
      }
      bool merged = false;
      const double cost_c = block_min_cost(dag, current, layout, topo, params.alpha).cost;
      while (!cand.empty()) {
        std::vector<int> joined = current;
        joined.insert(joined.end(), cand.begin(), cand.end());
        std::sort(joined.begin(), joined.end());
        const double cost_d = block_min_cost(dag, cand, layout, topo, params.alpha).cost;
        const double cost_m = block_min_cost(dag, joined, layout, topo, params.alpha).cost;
        const bool accept = cost_m != kInfeasible && cost_m <= cost_c + cost_d;
        out.fusions.push_back({cost_c, cost_d, cost_m, accept});
        if (accept) {
          for (int id : cand) state[static_cast<std::size_t>(id)] = 1;
          current = std::move(joined);
          merged = true;
          break;
        }
        state[static_cast<std::size_t>(cand.back())] = 0;
        cand.pop_back();
      }
      if (!merged) break;
    }
    for (int id : current) state[static_cast<std::size_t>(id)] = 3;
    out.blocks.push_back(make_block(dag, static_cast<int>(out.blocks.size()), std::move(current), layout, topo,
                                    params.alpha));
  }
  return out;
}

std::vector<Block> singleton_blocks(const GateDag& dag) {
  std::vector<Block> blocks;
  for (const auto& g : dag.gates()) {
    if (!g.is_cnot()) continue;
    Block b;
    b.id = static_cast<int>(blocks.size());
    b.gates = {g.id};
    b.qubits = {std::min(g.qubits[0], g.qubits[1]), std::max(g.qubits[0], g.qubits[1])};
    blocks.push_back(std::move(b));
  }
  return blocks;
}

std::vector<int> overlap_qubits(const Block& a, const Block& b) {
  std::vector<int> out;
  std::set_intersection(a.qubits.begin(), a.qubits.end(), b.qubits.begin(), b.qubits.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace athena

#include "athena/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace athena {

// ---------------------------------------------------------------- Layout

Layout::Layout(const Topology& topo, std::vector<int> home_chip)
    : capacity_(topo.epr_capacity()),
      compute_(topo.compute_qubits()),
      home_(std::move(home_chip)),
      external_count_(static_cast<std::size_t>(topo.chip_count()), 0),
      comm_holder_(static_cast<std::size_t>(topo.chip_count()),
                   std::vector<int>(static_cast<std::size_t>(topo.epr_capacity()), -1)) {
  std::vector<int> used(static_cast<std::size_t>(topo.chip_count()), 0);
  home_slot_.resize(home_.size());
  for (std::size_t q = 0; q < home_.size(); ++q) {
    const int c = home_[q];
    if (c < 0 || c >= topo.chip_count()) throw std::invalid_argument("qubit mapped to unknown chip");
    auto& n = used[static_cast<std::size_t>(c)];
    if (n >= compute_)
      throw std::invalid_argument("chip " + std::to_string(c) + " compute capacity exceeded");
    home_slot_[q] = n++;
  }
  chip_ = home_;
  comm_slot_.assign(home_.size(), -1);
}

Placement Layout::placement(int q) const {
  const auto i = static_cast<std::size_t>(q);
  if (chip_[i] == home_[i]) return {home_[i], home_slot_[i]};
  return {chip_[i], compute_ + comm_slot_[i]};
}

std::vector<int> Layout::externals(int c) const {
  std::vector<int> out;
  for (int s : comm_holder_[static_cast<std::size_t>(c)])
    if (s >= 0) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

void Layout::move(int q, int c) {
  const auto i = static_cast<std::size_t>(q);
  const int from = chip_[i];
  if (from == c) return;
  if (c != home_[i] && free_slots(c) <= 0)
    throw std::logic_error("chip " + std::to_string(c) + " has no free communication slot");
  if (from != home_[i]) {
    comm_holder_[static_cast<std::size_t>(from)][static_cast<std::size_t>(comm_slot_[i])] = -1;
    --external_count_[static_cast<std::size_t>(from)];
    comm_slot_[i] = -1;
  }
  if (c != home_[i]) {
    auto& holders = comm_holder_[static_cast<std::size_t>(c)];
    const auto slot = std::find(holders.begin(), holders.end(), -1);
    *slot = q;
    comm_slot_[i] = static_cast<int>(slot - holders.begin());
    ++external_count_[static_cast<std::size_t>(c)];
  }
  chip_[i] = c;
}

std::uint64_t Layout::hash() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (int c : chip_) {
    h ^= static_cast<std::uint64_t>(c + 1);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ------------------------------------------------------ InteractionGraph

InteractionGraph::InteractionGraph(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

InteractionGraph InteractionGraph::from_dag(const GateDag& dag) {
  InteractionGraph g(dag.qubit_count());
  for (const auto& gate : dag.gates())
    if (gate.is_cnot()) g.add_weight(gate.qubits[0], gate.qubits[1], 1);
  return g;
}

void InteractionGraph::add_weight(int u, int v, int w) {
  if (u == v) throw std::invalid_argument("self loop in interaction graph");
  auto bump = [&](int a, int b) {
    auto& list = adj_[static_cast<std::size_t>(a)];
    auto it = std::lower_bound(list.begin(), list.end(), b,
                               [](const Edge& e, int key) { return e.to < key; });
    if (it != list.end() && it->to == b)
      it->weight += w;
    else
      list.insert(it, Edge{b, w});
  };
  bump(u, v);
  bump(v, u);
}

int InteractionGraph::weight(int u, int v) const {
  const auto& list = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(list.begin(), list.end(), v,
                             [](const Edge& e, int key) { return e.to < key; });
  return (it != list.end() && it->to == v) ? it->weight : 0;
}

long long InteractionGraph::cut_weight(std::span<const int> part) const {
  long long cut = 0;
  for (std::size_t u = 0; u < adj_.size(); ++u)
    for (const auto& e : adj_[u])
      if (static_cast<std::size_t>(e.to) > u && part[u] != part[static_cast<std::size_t>(e.to)])
        cut += e.weight;
  return cut;
}

// ------------------------------------------------------------ partition

namespace {

// Weighted graph used inside the multilevel bisection.
struct WGraph {
  std::vector<int> vweight;
  std::vector<std::vector<InteractionGraph::Edge>> adj;
  [[nodiscard]] int size() const { return static_cast<int>(vweight.size()); }
};

struct Bounds {
  int lo;
  int hi;
  [[nodiscard]] int violation(int w) const { return w < lo ? lo - w : (w > hi ? w - hi : 0); }
};

long long cut_of(const WGraph& g, const std::vector<int>& side) {
  long long cut = 0;
  for (int u = 0; u < g.size(); ++u)
    for (const auto& e : g.adj[static_cast<std::size_t>(u)])
      if (e.to > u && side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(e.to)])
        cut += e.weight;
  return cut;
}

int left_weight(const WGraph& g, const std::vector<int>& side) {
  int w = 0;
  for (int u = 0; u < g.size(); ++u)
    if (side[static_cast<std::size_t>(u)] == 0) w += g.vweight[static_cast<std::size_t>(u)];
  return w;
}

// Fiduccia-Mattheyses passes. Side 0 is "left"; its weight must stay in
// bounds. Starts from an infeasible state are pulled toward feasibility first.
void fm_refine(const WGraph& g, std::vector<int>& side, Bounds bounds) {
  const int n = g.size();
  for (int pass = 0; pass < 12; ++pass) {
    std::vector<long long> gain(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u)
      for (const auto& e : g.adj[static_cast<std::size_t>(u)])
        gain[static_cast<std::size_t>(u)] +=
            side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(e.to)] ? e.weight : -e.weight;

    std::vector<char> locked(static_cast<std::size_t>(n), 0);
    int lw = left_weight(g, side);
    long long cut = cut_of(g, side);
    const long long start_cut = cut;
    const int start_violation = bounds.violation(lw);
    long long best_cut = cut;
    int best_violation = start_violation;
    std::vector<int> moves;
    std::size_t best_prefix = 0;

    for (int step = 0; step < n; ++step) {
      int pick = -1;
      long long pick_gain = std::numeric_limits<long long>::min();
      int pick_violation = std::numeric_limits<int>::max();
      for (int u = 0; u < n; ++u) {
        if (locked[static_cast<std::size_t>(u)]) continue;
        const int w = g.vweight[static_cast<std::size_t>(u)];
        const int nlw = side[static_cast<std::size_t>(u)] == 0 ? lw - w : lw + w;
        const int v_now = bounds.violation(lw);
        const int v_new = bounds.violation(nlw);
        if (v_new > v_now || (v_now == 0 && v_new > 0)) continue;
        const long long gu = gain[static_cast<std::size_t>(u)];
        if (v_new < pick_violation || (v_new == pick_violation && gu > pick_gain)) {
          pick = u;
          pick_gain = gu;
          pick_violation = v_new;
        }
      }
      if (pick < 0) break;
      const auto pu = static_cast<std::size_t>(pick);
      const int w = g.vweight[pu];
      lw += side[pu] == 0 ? -w : w;
      side[pu] ^= 1;
      cut -= gain[pu];
      locked[pu] = 1;
      moves.push_back(pick);
      gain[pu] = -gain[pu];
      for (const auto& e : g.adj[pu]) {
        const auto v = static_cast<std::size_t>(e.to);
        gain[v] += side[v] == side[pu] ? -2LL * e.weight : 2LL * e.weight;
      }
      const int viol = bounds.violation(lw);
      if (viol < best_violation || (viol == best_violation && cut < best_cut)) {
        best_violation = viol;
        best_cut = cut;
        best_prefix = moves.size();
      }
    }
    for (std::size_t i = moves.size(); i > best_prefix; --i)
      side[static_cast<std::size_t>(moves[i - 1])] ^= 1;
    if (best_violation == start_violation && best_cut >= start_cut) break;
  }
}

WGraph coarsen(const WGraph& g, std::vector<int>& fine_to_coarse, std::mt19937_64& rng, int max_vweight) {
  const int n = g.size();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> match(static_cast<std::size_t>(n), -1);
  for (int u : order) {
    if (match[static_cast<std::size_t>(u)] >= 0) continue;
    int best = -1;
    int best_w = 0;
    for (const auto& e : g.adj[static_cast<std::size_t>(u)]) {
      if (match[static_cast<std::size_t>(e.to)] >= 0) continue;
      if (g.vweight[static_cast<std::size_t>(u)] + g.vweight[static_cast<std::size_t>(e.to)] > max_vweight)
        continue;
      if (e.weight > best_w) {
        best = e.to;
        best_w = e.weight;
      }
    }
    match[static_cast<std::size_t>(u)] = best >= 0 ? best : u;
    if (best >= 0) match[static_cast<std::size_t>(best)] = u;
  }
  fine_to_coarse.assign(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int u = 0; u < n; ++u) {
    if (fine_to_coarse[static_cast<std::size_t>(u)] >= 0) continue;
    fine_to_coarse[static_cast<std::size_t>(u)] = next;
    fine_to_coarse[static_cast<std::size_t>(match[static_cast<std::size_t>(u)])] = next;
    ++next;
  }
  WGraph c;
  c.vweight.assign(static_cast<std::size_t>(next), 0);
  c.adj.resize(static_cast<std::size_t>(next));
  for (int u = 0; u < n; ++u) c.vweight[static_cast<std::size_t>(fine_to_coarse[static_cast<std::size_t>(u)])] += g.vweight[static_cast<std::size_t>(u)];
  std::vector<std::vector<long long>> acc;
  for (int u = 0; u < n; ++u) {
    const int cu = fine_to_coarse[static_cast<std::size_t>(u)];
    for (const auto& e : g.adj[static_cast<std::size_t>(u)]) {
      const int cv = fine_to_coarse[static_cast<std::size_t>(e.to)];
      if (cu == cv) continue;
      auto& list = c.adj[static_cast<std::size_t>(cu)];
      auto it = std::lower_bound(list.begin(), list.end(), cv,
                                 [](const InteractionGraph::Edge& x, int key) { return x.to < key; });
      if (it != list.end() && it->to == cv)
        it->weight += e.weight;
      else
        list.insert(it, InteractionGraph::Edge{cv, e.weight});
    }
  }
  return c;
}

// Greedy graph growing from `seed`, then FM.
std::vector<int> grow_bisection(const WGraph& g, int seed, Bounds bounds) {
  const int n = g.size();
  std::vector<int> side(static_cast<std::size_t>(n), 1);
  int lw = 0;
  const int target = (bounds.lo + bounds.hi) / 2;
  std::vector<long long> conn(static_cast<std::size_t>(n), 0);
  int next = seed;
  while (next >= 0 && lw + g.vweight[static_cast<std::size_t>(next)] <= std::max(target, bounds.lo)) {
    side[static_cast<std::size_t>(next)] = 0;
    lw += g.vweight[static_cast<std::size_t>(next)];
    for (const auto& e : g.adj[static_cast<std::size_t>(next)]) conn[static_cast<std::size_t>(e.to)] += e.weight;
    next = -1;
    long long best = std::numeric_limits<long long>::min();
    for (int u = 0; u < n; ++u) {
      if (side[static_cast<std::size_t>(u)] == 0) continue;
      if (conn[static_cast<std::size_t>(u)] > best) {
        best = conn[static_cast<std::size_t>(u)];
        next = u;
      }
    }
  }
  fm_refine(g, side, bounds);
  return side;
}

std::vector<int> multilevel_bisect(const WGraph& g, Bounds bounds, std::mt19937_64& rng) {
  const int n = g.size();
  if (n == 0) return {};
  std::vector<WGraph> levels{g};
  std::vector<std::vector<int>> maps;
  const int max_vweight = std::max(1, (bounds.hi - bounds.lo) / 2 + 1);
  while (levels.back().size() > 24) {
    std::vector<int> f2c;
    WGraph c = coarsen(levels.back(), f2c, rng, max_vweight);
    if (c.size() * 10 > levels.back().size() * 9) break;
    maps.push_back(std::move(f2c));
    levels.push_back(std::move(c));
  }

  const WGraph& coarsest = levels.back();
  const int heaviest = *std::max_element(coarsest.vweight.begin(), coarsest.vweight.end());
  const Bounds relaxed{std::max(0, bounds.lo - heaviest), bounds.hi + heaviest};
  std::vector<int> best;
  long long best_cut = std::numeric_limits<long long>::max();
  int best_violation = std::numeric_limits<int>::max();
  const int tries = std::min(coarsest.size(), 8);
  std::uniform_int_distribution<int> pick(0, coarsest.size() - 1);
  for (int t = 0; t < tries; ++t) {
    auto side = grow_bisection(coarsest, t == 0 ? 0 : pick(rng), relaxed);
    const int viol = relaxed.violation(left_weight(coarsest, side));
    const long long cut = cut_of(coarsest, side);
    if (viol < best_violation || (viol == best_violation && cut < best_cut)) {
      best = std::move(side);
      best_cut = cut;
      best_violation = viol;
    }
  }

  for (std::size_t lvl = levels.size() - 1; lvl > 0; --lvl) {
    const auto& f2c = maps[lvl - 1];
    std::vector<int> fine(f2c.size());
    for (std::size_t u = 0; u < f2c.size(); ++u) fine[u] = best[static_cast<std::size_t>(f2c[u])];
    best = std::move(fine);
    fm_refine(levels[lvl - 1], best, lvl - 1 == 0 ? bounds : relaxed);
  }
  if (levels.size() == 1) fm_refine(g, best, bounds);
  return best;
}

void recursive_partition(const InteractionGraph& graph, const std::vector<int>& nodes, int part_lo,
                         int part_hi, std::span<const int> capacity, std::uint64_t seed,
                         std::vector<int>& out) {
  if (part_hi - part_lo == 1) {
    for (int u : nodes) out[static_cast<std::size_t>(u)] = part_lo;
    return;
  }
  const int mid = part_lo + (part_hi - part_lo) / 2;
  const int cap_left = std::accumulate(capacity.begin() + part_lo, capacity.begin() + mid, 0);
  const int cap_right = std::accumulate(capacity.begin() + mid, capacity.begin() + part_hi, 0);
  const int m = static_cast<int>(nodes.size());
  const Bounds bounds{std::max(0, m - cap_right), std::min(m, cap_left)};

  std::vector<int> local(static_cast<std::size_t>(graph.node_count()), -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) local[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
  WGraph g;
  g.vweight.assign(nodes.size(), 1);
  g.adj.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (const auto& e : graph.neighbors(nodes[i]))
      if (local[static_cast<std::size_t>(e.to)] >= 0)
        g.adj[i].push_back({local[static_cast<std::size_t>(e.to)], e.weight});

  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(part_lo + 1)));
  const auto side = multilevel_bisect(g, bounds, rng);
  std::vector<int> left;
  std::vector<int> right;
  for (std::size_t i = 0; i < nodes.size(); ++i) (side[i] == 0 ? left : right).push_back(nodes[i]);
  if (static_cast<int>(left.size()) > cap_left || static_cast<int>(right.size()) > cap_right)
    throw std::logic_error("bisection violated part capacity");
  recursive_partition(graph, left, part_lo, mid, capacity, seed, out);
  recursive_partition(graph, right, mid, part_hi, capacity, seed, out);
}

// Greedy k-way cleanup after recursive bisection: best single moves into parts
// with room, then best pairwise swaps, until no step lowers the cut. Each
// accepted step strictly lowers an integer cut, so the loop ends.
void refine_kway(const InteractionGraph& graph, int parts, std::span<const int> capacity, std::vector<int>& part) {
  const int n = graph.node_count();
  const auto k = static_cast<std::size_t>(parts);
  std::vector<long long> conn(static_cast<std::size_t>(n) * k, 0);  // weight from node to each part
  std::vector<int> load(k, 0);
  auto at = [&](int u, int p) -> long long& { return conn[static_cast<std::size_t>(u) * k + static_cast<std::size_t>(p)]; };
  for (int u = 0; u < n; ++u) {
    ++load[static_cast<std::size_t>(part[static_cast<std::size_t>(u)])];
    for (const auto& e : graph.neighbors(u)) at(u, part[static_cast<std::size_t>(e.to)]) += e.weight;
  }
  auto move = [&](int u, int to) {
    const int from = part[static_cast<std::size_t>(u)];
    for (const auto& e : graph.neighbors(u)) {
      at(e.to, from) -= e.weight;
      at(e.to, to) += e.weight;
    }
    --load[static_cast<std::size_t>(from)];
    ++load[static_cast<std::size_t>(to)];
    part[static_cast<std::size_t>(u)] = to;
  };
  for (bool improved = true; improved;) {
    improved = false;
    for (int u = 0; u < n; ++u) {
      const int from = part[static_cast<std::size_t>(u)];
      int best = -1;
      long long best_gain = 0;
      for (int p = 0; p < parts; ++p)
        if (p != from && load[static_cast<std::size_t>(p)] < capacity[static_cast<std::size_t>(p)] &&
            at(u, p) - at(u, from) > best_gain) {
          best = p;
          best_gain = at(u, p) - at(u, from);
        }
      if (best >= 0) {
        move(u, best);
        improved = true;
      }
    }
    if (improved) continue;
    for (int u = 0; u < n && !improved; ++u)
      for (int v = u + 1; v < n; ++v) {
        const int a = part[static_cast<std::size_t>(u)];
        const int b = part[static_cast<std::size_t>(v)];
        if (a == b) continue;
        const long long gain = at(u, b) - at(u, a) + at(v, a) - at(v, b) - 2LL * graph.weight(u, v);
        if (gain > 0) {
          move(u, b);
          move(v, a);
          improved = true;
          break;
        }
      }
  }
}

}  // namespace

std::vector<int> partition_mincut(const InteractionGraph& graph, int parts, std::span<const int> capacity,
                                  std::uint64_t seed) {
  if (parts < 1 || static_cast<int>(capacity.size()) != parts)
    throw std::invalid_argument("one capacity per part is required");
  const long long total = std::accumulate(capacity.begin(), capacity.end(), 0LL);
  if (total < graph.node_count()) throw std::invalid_argument("part capacities cannot hold every qubit");
  std::vector<int> nodes(static_cast<std::size_t>(graph.node_count()));
  std::iota(nodes.begin(), nodes.end(), 0);
  std::vector<int> out(nodes.size(), 0);
  recursive_partition(graph, nodes, 0, parts, capacity, seed, out);
  if (parts > 1) refine_kway(graph, parts, capacity, out);
  return out;
}

// ---------------------------------------------------------- chip assign

PartWeights part_weights(const InteractionGraph& graph, std::span<const int> part, int parts) {
  PartWeights w(static_cast<std::size_t>(parts), std::vector<long long>(static_cast<std::size_t>(parts), 0));
  for (int u = 0; u < graph.node_count(); ++u)
    for (const auto& e : graph.neighbors(u)) {
      const int a = part[static_cast<std::size_t>(u)];
      const int b = part[static_cast<std::size_t>(e.to)];
      if (e.to > u && a != b) {
        w[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += e.weight;
        w[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] += e.weight;
      }
    }
  return w;
}

long long assignment_cost(const PartWeights& w, std::span<const int> chip_of_part, const Topology& topo) {
  long long cost = 0;
  for (std::size_t p = 0; p < w.size(); ++p)
    for (std::size_t q = p + 1; q < w.size(); ++q)
      cost += w[p][q] * topo.hops(chip_of_part[p], chip_of_part[q]);
  return cost;
}

namespace {

struct ExactAssigner {
  const PartWeights& w;
  const Topology& topo;
  std::vector<int> order;  // parts, heaviest first
  std::vector<int> chip_of;
  std::vector<char> used;
  std::vector<int> best;
  long long best_cost = std::numeric_limits<long long>::max();

  void search(std::size_t depth, long long partial) {
    if (partial >= best_cost) return;
    if (depth == order.size()) {
      best_cost = partial;
      best = chip_of;
      return;
    }
    const auto p = static_cast<std::size_t>(order[depth]);
    for (int c = 0; c < topo.chip_count(); ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      long long add = 0;
      for (std::size_t i = 0; i < depth; ++i) {
        const auto q = static_cast<std::size_t>(order[i]);
        add += w[p][q] * topo.hops(c, chip_of[q]);
      }
      used[static_cast<std::size_t>(c)] = 1;
      chip_of[p] = c;
      search(depth + 1, partial + add);
      used[static_cast<std::size_t>(c)] = 0;
      chip_of[p] = -1;
    }
  }
};

}  // namespace

std::vector<int> assign_chips(const PartWeights& w, const Topology& topo, std::uint64_t seed) {
  const int parts = static_cast<int>(w.size());
  if (parts > topo.chip_count()) throw std::invalid_argument("more parts than chips");
  if (topo.chip_count() <= 9) {
    ExactAssigner a{w, topo, {}, std::vector<int>(static_cast<std::size_t>(parts), -1),
                    std::vector<char>(static_cast<std::size_t>(topo.chip_count()), 0), {},
                    std::numeric_limits<long long>::max()};
    a.order.resize(static_cast<std::size_t>(parts));
    std::iota(a.order.begin(), a.order.end(), 0);
    std::stable_sort(a.order.begin(), a.order.end(), [&](int x, int y) {
      const auto sx = std::accumulate(w[static_cast<std::size_t>(x)].begin(), w[static_cast<std::size_t>(x)].end(), 0LL);
      const auto sy = std::accumulate(w[static_cast<std::size_t>(y)].begin(), w[static_cast<std::size_t>(y)].end(), 0LL);
      return sx > sy;
    });
    a.search(0, 0);
    return a.best;
  }

  // Simulated annealing over chip permutations; parts occupy the first slots.
  std::mt19937_64 rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(topo.chip_count()));
  std::iota(perm.begin(), perm.end(), 0);
  auto cost_of = [&](const std::vector<int>& p) {
    return assignment_cost(w, std::span<const int>(p.data(), static_cast<std::size_t>(parts)), topo);
  };
  long long cur = cost_of(perm);
  auto best = perm;
  long long best_cost = cur;
  std::uniform_int_distribution<int> any_part(0, parts - 1);
  std::uniform_int_distribution<int> any_chip(0, topo.chip_count() - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double temp = 1.0 + static_cast<double>(cur) / std::max(1, parts);
  const int iters = 20000 * topo.chip_count();
  for (int it = 0; it < iters; ++it) {
    const auto i = static_cast<std::size_t>(any_part(rng));
    const auto j = static_cast<std::size_t>(any_chip(rng));
    if (i == j) continue;
    std::swap(perm[i], perm[j]);
    const long long next = cost_of(perm);
    const double delta = static_cast<double>(next - cur);
    if (delta <= 0 || unit(rng) < std::exp(-delta / temp)) {
      cur = next;
      if (cur < best_cost) {
        best_cost = cur;
        best = perm;
      }
    } else {
      std::swap(perm[i], perm[j]);
    }
    temp *= 0.9997;
  }
  best.resize(static_cast<std::size_t>(parts));
  return best;
}

Layout initial_layout(std::span<const int> chip_of_qubit, const Topology& topo) {
  return Layout(topo, std::vector<int>(chip_of_qubit.begin(), chip_of_qubit.end()));
}

std::string_view to_string(MapperKind m) noexcept { return m == MapperKind::MinCut ? "mincut" : "trivial"; }

MapperKind mapper_from_string(std::string_view name) {
  if (name == "mincut") return MapperKind::MinCut;
  if (name == "trivial") return MapperKind::Trivial;
  throw std::invalid_argument("unknown mapper '" + std::string(name) + "'");
}

Layout map_program(const GateDag& dag, const Topology& topo, MapperKind mapper, std::uint64_t seed) {
  const int n = dag.qubit_count();
  const int chips = topo.chip_count();
  if (static_cast<long long>(chips) * topo.compute_qubits() < n)
    throw std::invalid_argument("program has more qubits than the machine's compute capacity");
  std::vector<int> home(static_cast<std::size_t>(n));
  if (mapper == MapperKind::Trivial) {
    const int per = std::max(1, (n + chips - 1) / chips);
    for (int q = 0; q < n; ++q) home[static_cast<std::size_t>(q)] = q / per;
    return initial_layout(home, topo);
  }
  const auto graph = InteractionGraph::from_dag(dag);
  const std::vector<int> capacity(static_cast<std::size_t>(chips), topo.compute_qubits());
  const auto part = partition_mincut(graph, chips, capacity, seed);
  const auto chip_of_part = assign_chips(part_weights(graph, part, chips), topo, seed);
  for (int q = 0; q < n; ++q)
    home[static_cast<std::size_t>(q)] = chip_of_part[static_cast<std::size_t>(part[static_cast<std::size_t>(q)])];
  return initial_layout(home, topo);
}

}  // namespace athena

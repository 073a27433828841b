#include "athena/oracle.hpp"

#include <algorithm>
#include <array>
#include <queue>
#include <unordered_map>

namespace athena {

namespace {

struct Action {
  enum Kind { Start, Hop, ReCnot } kind = Start;
  int qubit = -1;  // hop
  int from = -1;
  int to = -1;
  int gate = -1;   // Re-CNOT
  std::vector<int> local;  // CNOTs run eagerly afterwards, in order
};

struct Node {
  double cost;
  int relocations;
  int recnots;
  std::uint64_t parent;
  Action action;
  bool settled = false;
};

class Search {
 public:
  Search(const GateDag& dag, const Layout& initial, const Topology& topo, double alpha)
      : dag_(dag), topo_(topo), alpha_(alpha), homes_(initial.homes().begin(), initial.homes().end()) {
    for (const auto& g : dag.gates())
      if (g.is_cnot()) {
        bit_.push_back(static_cast<int>(cnots_.size()));
        cnots_.push_back(g.id);
      } else {
        bit_.push_back(-1);
      }
    // CNOT-level predecessor masks.
    std::vector<int> last(static_cast<std::size_t>(dag.qubit_count()), -1);
    for (int id : cnots_) {
      std::uint32_t mask = 0;
      for (int q : dag.gate(id).qubits) {
        if (last[static_cast<std::size_t>(q)] >= 0) mask |= 1u << bit_[static_cast<std::size_t>(last[static_cast<std::size_t>(q)])];
        last[static_cast<std::size_t>(q)] = id;
      }
      pred_mask_.push_back(mask);
    }
    full_ = cnots_.empty() ? 0u : (cnots_.size() == 32 ? ~0u : (1u << cnots_.size()) - 1);
  }

  OracleResult run(const Layout& initial) {
    std::vector<int> chips(initial.chips().begin(), initial.chips().end());
    std::uint32_t mask = 0;
    Action start;
    start.kind = Action::Start;
    start.local = close(chips, mask);
    const auto key0 = encode(chips, mask);
    nodes_[key0] = Node{0.0, 0, 0, key0, std::move(start)};
    using Item = std::tuple<double, std::uint64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
    open.emplace(0.0, key0);

    while (!open.empty()) {
      const auto [cost, key] = open.top();
      open.pop();
      auto& node = nodes_.at(key);
      if (node.settled || cost > node.cost) continue;
      node.settled = true;
      const int relocs = node.relocations;
      const int recs = node.recnots;
      decode(key, chips, mask);
      if (mask == full_) return finish(initial, key);

      const auto ext = externals(chips);
      // Single hops of any qubit.
      for (int q = 0; q < static_cast<int>(chips.size()); ++q) {
        const int from = chips[static_cast<std::size_t>(q)];
        for (int to : topo_.neighbors(from)) {
          if (to != homes_[static_cast<std::size_t>(q)] && ext[static_cast<std::size_t>(to)] >= topo_.epr_capacity())
            continue;
          auto next = chips;
          next[static_cast<std::size_t>(q)] = to;
          auto next_mask = mask;
          Action a{Action::Hop, q, from, to, -1, close(next, next_mask)};
          relax(key, cost + 1.0, relocs + 1, recs, next, next_mask, std::move(a), open);
        }
      }
      // Re-CNOTs of ready gates across adjacent chips.
      for (std::size_t b = 0; b < cnots_.size(); ++b) {
        if ((mask >> b) & 1u || (pred_mask_[b] & ~mask) != 0) continue;
        const auto& g = dag_.gate(cnots_[b]);
        const int cc = chips[static_cast<std::size_t>(g.qubits[0])];
        const int tc = chips[static_cast<std::size_t>(g.qubits[1])];
        if (!topo_.adjacent(cc, tc) || ext[static_cast<std::size_t>(tc)] >= topo_.epr_capacity()) continue;
        auto next_mask = mask | (1u << b);
        auto next = chips;
        Action a{Action::ReCnot, -1, cc, tc, g.id, close(next, next_mask)};
        relax(key, cost + alpha_, relocs, recs + 1, next, next_mask, std::move(a), open);
      }
    }
    throw std::logic_error("oracle found no complete schedule");
  }

 private:
  std::vector<int> externals(const std::vector<int>& chips) const {
    std::vector<int> ext(static_cast<std::size_t>(topo_.chip_count()), 0);
    for (std::size_t q = 0; q < chips.size(); ++q)
      if (chips[q] != homes_[q]) ++ext[static_cast<std::size_t>(chips[q])];
    return ext;
  }

  // Runs every ready local CNOT until none is left; returns them in order.
  std::vector<int> close(const std::vector<int>& chips, std::uint32_t& mask) const {
    std::vector<int> ran;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t b = 0; b < cnots_.size(); ++b) {
        if ((mask >> b) & 1u || (pred_mask_[b] & ~mask) != 0) continue;
        const auto& g = dag_.gate(cnots_[b]);
        if (chips[static_cast<std::size_t>(g.qubits[0])] != chips[static_cast<std::size_t>(g.qubits[1])]) continue;
        mask |= 1u << b;
        ran.push_back(g.id);
        progress = true;
      }
    }
    return ran;
  }

  std::uint64_t encode(const std::vector<int>& chips, std::uint32_t mask) const {
    std::uint64_t code = 0;
    for (auto it = chips.rbegin(); it != chips.rend(); ++it)
      code = code * static_cast<std::uint64_t>(topo_.chip_count()) + static_cast<std::uint64_t>(*it);
    return (code << 32) | mask;
  }

  void decode(std::uint64_t key, std::vector<int>& chips, std::uint32_t& mask) const {
    mask = static_cast<std::uint32_t>(key & 0xffffffffULL);
    std::uint64_t code = key >> 32;
    for (auto& c : chips) {
      c = static_cast<int>(code % static_cast<std::uint64_t>(topo_.chip_count()));
      code /= static_cast<std::uint64_t>(topo_.chip_count());
    }
  }

  template <class Queue>
  void relax(std::uint64_t parent, double cost, int relocs, int recs, const std::vector<int>& chips,
             std::uint32_t mask, Action action, Queue& open) {
    const auto key = encode(chips, mask);
    auto it = nodes_.find(key);
    if (it != nodes_.end() && (it->second.settled || it->second.cost <= cost)) return;
    nodes_[key] = Node{cost, relocs, recs, parent, std::move(action)};
    open.emplace(cost, key);
  }

  OracleResult finish(const Layout& initial, std::uint64_t goal) {
    std::vector<const Node*> path;
    for (std::uint64_t k = goal;;) {
      const auto& n = nodes_.at(k);
      path.push_back(&n);
      if (n.action.kind == Action::Start) break;
      k = n.parent;
    }
    std::reverse(path.begin(), path.end());
    OracleResult r;
    r.t_eff = nodes_.at(goal).cost;
    r.relocations = nodes_.at(goal).relocations;
    r.recnots = nodes_.at(goal).recnots;
    r.states = nodes_.size();
    r.witness.initial = initial;
    Layout layout = initial;
    auto& out = r.witness.instructions;
    for (const Node* n : path) {
      const auto& a = n->action;
      if (a.kind == Action::Hop) {
        out.push_back(make_relocate(a.qubit, a.from, a.to, -1, -1, false));
        layout.move(a.qubit, a.to);
      } else if (a.kind == Action::ReCnot) {
        out.push_back(make_recnot(dag_.gate(a.gate), a.from, a.to, -1));
      }
      for (int id : a.local) out.push_back(make_local_cnot(dag_.gate(id), layout.chip(dag_.gate(id).qubits[0]), -1));
    }
    return r;
  }

  const GateDag& dag_;
  const Topology& topo_;
  double alpha_;
  std::vector<int> homes_;
  std::vector<int> cnots_;
  std::vector<int> bit_;  // gate id -> CNOT bit, -1 for unary gates
  std::vector<std::uint32_t> pred_mask_;
  std::uint32_t full_ = 0;
  std::unordered_map<std::uint64_t, Node> nodes_;
};

}  // namespace

OracleResult optimal_teff(const GateDag& dag, const Layout& initial, const Topology& topo, double alpha,
                          const OracleLimits& limits) {
  if (topo.chip_count() > limits.max_chips) throw OracleLimitError("oracle handles at most " + std::to_string(limits.max_chips) + " chips");
  if (dag.qubit_count() > limits.max_qubits) throw OracleLimitError("oracle handles at most " + std::to_string(limits.max_qubits) + " qubits");
  if (static_cast<int>(dag.cnot_count()) > limits.max_cnots)
    throw OracleLimitError("oracle handles at most " + std::to_string(limits.max_cnots) + " CNOTs");
  if (topo.epr_capacity() > limits.max_capacity)
    throw OracleLimitError("oracle handles EPR capacity of at most " + std::to_string(limits.max_capacity));
  if (initial.qubit_count() != dag.qubit_count()) throw std::invalid_argument("layout does not match circuit");
  Search search(dag, initial, topo, alpha);
  return search.run(initial);
}

}  // namespace athena

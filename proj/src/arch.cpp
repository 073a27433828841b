#include "athena/arch.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace athena {

Nanos from_micros(double us) { return Nanos{std::llround(us * 1000.0)}; }
double to_micros(Nanos t) noexcept { return static_cast<double>(t.count()) / 1e3; }
double to_millis(Nanos t) noexcept { return static_cast<double>(t.count()) / 1e6; }

void TimingModel::check() const {
  for (Nanos d : {one_qubit, two_qubit, atom_transfer, atom_move, measure, epr_gen, relocate, recnot})
    if (d.count() <= 0) throw std::invalid_argument("timing durations must be positive");
  if (!(epr_hide >= 0.0 && epr_hide <= 1.0))
    throw std::invalid_argument("epr_hide must lie in [0, 1]");
}

void EprModel::check() const {
  if (!(p_attempt > 0.0 && p_attempt <= 1.0))
    throw std::invalid_argument("p_attempt must lie in (0, 1]");
  if (n_attempts < 0) throw std::invalid_argument("n_attempts must be non-negative");
}

double epr_success_prob(const EprModel& model, int n) {
  if (n < 0) throw std::invalid_argument("attempt count must be non-negative");
  return 1.0 - std::pow(1.0 - model.p_attempt, n);
}

Nanos epr_generation_latency(const EprModel& model) {
  return model.load + model.pump + model.bsm_per_attempt * model.n_attempts + model.depump +
         model.unload;
}

Nanos effective_epr_overhead(const TimingModel& timing) {
  if (!(timing.epr_hide >= 0.0 && timing.epr_hide <= 1.0))
    throw std::invalid_argument("epr_hide must lie in [0, 1]");
  return Nanos{std::llround((1.0 - timing.epr_hide) * static_cast<double>(timing.epr_gen.count()))};
}

Topology::Topology(TopologySpec spec) : spec_(std::move(spec)) {
  if (spec_.rows < 1 || spec_.cols < 1) throw std::invalid_argument("grid needs at least one chip");
  if (spec_.links_per_edge < 1) throw std::invalid_argument("links_per_edge must be >= 1");
  if (!(spec_.compute_fraction > 0.0 && spec_.compute_fraction <= 1.0))
    throw std::invalid_argument("compute_fraction must lie in (0, 1]");
  spec_.timing.check();
  spec_.epr.check();
  chips_ = spec_.rows * spec_.cols;
  // The epsilon keeps exact products like 0.6 * 5 from flooring to 2.
  compute_ = static_cast<int>(
      std::floor(spec_.compute_fraction * spec_.qubits_per_chip + 1e-9));
  if (compute_ < 1) throw std::invalid_argument("chips need at least one compute qubit");
  if (epr_capacity() < 1) throw std::invalid_argument("chips need EPR capacity >= 1");

  auto& e = spec_.edges;
  if (e.empty()) {
    for (int r = 0; r < spec_.rows; ++r)
      for (int c = 0; c < spec_.cols; ++c) {
        const int id = r * spec_.cols + c;
        if (c + 1 < spec_.cols) e.emplace_back(id, id + 1);
        if (r + 1 < spec_.rows) e.emplace_back(id, id + spec_.cols);
      }
  }
  for (auto& [a, b] : e) {
    if (a < 0 || b < 0 || a >= chips_ || b >= chips_ || a == b)
      throw std::invalid_argument("invalid chip edge");
    if (a > b) std::swap(a, b);
  }
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  edges_ = e;

  const auto n = static_cast<std::size_t>(chips_);
  adj_.assign(n, {});
  edge_id_.assign(n * n, -1);
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto [a, b] = edges_[i];
    adj_[static_cast<std::size_t>(a)].push_back(b);
    adj_[static_cast<std::size_t>(b)].push_back(a);
    edge_id_[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = static_cast<int>(i);
    edge_id_[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] = static_cast<int>(i);
  }
  for (auto& nb : adj_) std::sort(nb.begin(), nb.end());

  dist_.assign(n * n, -1);
  for (std::size_t src = 0; src < n; ++src) {
    std::deque<int> queue{static_cast<int>(src)};
    dist_[src * n + src] = 0;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adj_[static_cast<std::size_t>(u)]) {
        auto& d = dist_[src * n + static_cast<std::size_t>(v)];
        if (d < 0) {
          d = dist_[src * n + static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  if (std::find(dist_.begin(), dist_.end(), -1) != dist_.end())
    throw std::invalid_argument("chip graph is disconnected");

  next_hop_.assign(n * n, -1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) {
        next_hop_[a * n + b] = static_cast<int>(a);
        continue;
      }
      for (int v : adj_[a])
        if (dist_[static_cast<std::size_t>(v) * n + b] + 1 == dist_[a * n + b]) {
          next_hop_[a * n + b] = v;
          break;
        }
    }
}

int Topology::hops(int a, int b) const {
  const auto n = static_cast<std::size_t>(chips_);
  return dist_.at(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b));
}

const std::vector<int>& Topology::neighbors(int chip) const {
  return adj_.at(static_cast<std::size_t>(chip));
}

int Topology::edge_index(int a, int b) const {
  const auto n = static_cast<std::size_t>(chips_);
  return edge_id_.at(static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b));
}

std::vector<int> Topology::shortest_path(int a, int b) const {
  const auto n = static_cast<std::size_t>(chips_);
  std::vector<int> path{a};
  while (path.back() != b)
    path.push_back(next_hop_.at(static_cast<std::size_t>(path.back()) * n + static_cast<std::size_t>(b)));
  return path;
}

Topology Topology::with_epr_hide(double h) const {
  TopologySpec s = spec_;
  s.timing.epr_hide = h;
  return Topology(std::move(s));
}

Topology desk_topology(int program_qubits, int rows, int cols, int epr_capacity) {
  if (epr_capacity < 1) throw std::invalid_argument("epr_capacity must be >= 1");
  const int chips = rows * cols;
  const int compute = std::max(1, (program_qubits + chips - 1) / chips);
  TopologySpec spec;
  spec.rows = rows;
  spec.cols = cols;
  spec.qubits_per_chip = compute + epr_capacity;
  spec.compute_fraction = static_cast<double>(compute) / spec.qubits_per_chip;
  return Topology(std::move(spec));
}

std::string topology_to_toml(const Topology& topo) {
  const auto& s = topo.spec();
  const auto& t = s.timing;
  const auto& e = s.epr;
  std::ostringstream out;
  out.precision(17);
  out << "rows = " << s.rows << "\ncols = " << s.cols << "\nqubits_per_chip = " << s.qubits_per_chip
      << "\ncompute_fraction = " << s.compute_fraction << "\nlinks_per_edge = " << s.links_per_edge << "\nedges = [";
  for (std::size_t i = 0; i < topo.edges().size(); ++i)
    out << (i ? ", " : "") << "[" << topo.edges()[i].first << ", " << topo.edges()[i].second << "]";
  out << "]"
      << "\n\n[timing]\nt_1q = " << to_micros(t.one_qubit)
      << "\nt_2q = " << to_micros(t.two_qubit) << "\nt_atom_transfer = " << to_micros(t.atom_transfer)
      << "\nt_atom_move = " << to_micros(t.atom_move) << "\nt_measure = " << to_micros(t.measure)
      << "\nt_epr_gen = " << to_micros(t.epr_gen) << "\nt_relocate = " << to_micros(t.relocate)
      << "\nt_recnot = " << to_micros(t.recnot) << "\nepr_hide_fraction = " << t.epr_hide
      << "\n\n[epr]\np_attempt = " << e.p_attempt << "\nn_attempts = " << e.n_attempts
      << "\nload = " << to_micros(e.load) << "\npump = " << to_micros(e.pump)
      << "\nbsm_per_attempt = " << to_micros(e.bsm_per_attempt) << "\ndepump = " << to_micros(e.depump)
      << "\nunload = " << to_micros(e.unload) << "\n";
  return out.str();
}

}  // namespace athena

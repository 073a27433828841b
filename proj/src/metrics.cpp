#include "athena/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "athena/timing.hpp"

namespace athena {

Metrics compute_metrics(const Schedule& schedule, const Topology& topo, double alpha) {
  const auto& stream = schedule.instructions;
  Metrics m;
  m.n_relocate = schedule.relocations();
  m.n_recnot = schedule.recnots();
  m.t_eff = m.n_relocate + alpha * m.n_recnot;
  m.makespan = schedule.makespan();
  if (m.makespan > Nanos{0}) m.relocate_concurrency = m.n_relocate / to_millis(m.makespan);

  const auto graph = build_timing_graph(schedule, topo);
  const auto ready = ready_times(schedule, graph);
  int teleports = 0;
  int delayed = 0;
  Nanos waited{0};
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (!stream[i].is_teleport()) continue;
    ++teleports;
    if (stream[i].start > ready[i]) {
      ++delayed;
      waited += stream[i].start - ready[i];
    }
  }
  if (teleports > 0) m.delayed_teleport_fraction = static_cast<double>(delayed) / teleports;
  if (delayed > 0) m.mean_wait = waited / delayed;

  // Relocation-gap diagnostics.
  const int nq = schedule.initial.qubit_count();
  std::vector<std::vector<int>> per_qubit(static_cast<std::size_t>(nq));
  int max_block = -1;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    for (int k = 0; k < stream[i].arity(); ++k)
      per_qubit[static_cast<std::size_t>(stream[i].qubits[static_cast<std::size_t>(k)])].push_back(static_cast<int>(i));
    max_block = std::max(max_block, stream[i].block);
  }
  std::vector<char> block_teleports(static_cast<std::size_t>(max_block + 1), 0);
  for (const auto& in : stream)
    if (in.is_teleport() && in.block >= 0) block_teleports[static_cast<std::size_t>(in.block)] = 1;
  std::vector<int> local_only_prefix(block_teleports.size() + 1, 0);
  for (std::size_t b = 0; b < block_teleports.size(); ++b)
    local_only_prefix[b + 1] = local_only_prefix[b] + (block_teleports[b] ? 0 : 1);

  // Eviction events: first hop of each eviction run.
  std::vector<int> eviction_prefix(stream.size() + 1, 0);
  {
    std::vector<char> starts(stream.size(), 0);
    for (const auto& list : per_qubit)
      for (std::size_t j = 0; j < list.size(); ++j) {
        const auto& in = stream[static_cast<std::size_t>(list[j])];
        const bool continues = j > 0 && stream[static_cast<std::size_t>(list[j - 1])].kind == OpKind::Relocate;
        if (in.kind == OpKind::Relocate && in.eviction && !continues) starts[static_cast<std::size_t>(list[j])] = 1;
      }
    for (std::size_t i = 0; i < stream.size(); ++i) eviction_prefix[i + 1] = eviction_prefix[i] + starts[i];
  }

  double sum_cnots = 0;
  double sum_blocks = 0;
  double sum_local = 0;
  double sum_evict = 0;
  int samples = 0;
  for (const auto& list : per_qubit) {
    int prev_end = -1;  // position in list of the last hop of the previous event
    for (std::size_t j = 0; j < list.size(); ++j) {
      if (stream[static_cast<std::size_t>(list[j])].kind != OpKind::Relocate) continue;
      if (j > 0 && stream[static_cast<std::size_t>(list[j - 1])].kind == OpKind::Relocate) {
        prev_end = static_cast<int>(j);
        continue;
      }
      if (prev_end >= 0) {
        const auto& a = stream[static_cast<std::size_t>(list[static_cast<std::size_t>(prev_end)])];
        const auto& b = stream[static_cast<std::size_t>(list[j])];
        int cnots = 0;
        for (std::size_t k = static_cast<std::size_t>(prev_end) + 1; k < j; ++k) {
          const auto kind = stream[static_cast<std::size_t>(list[k])].kind;
          cnots += kind == OpKind::LocalCnot || kind == OpKind::ReCnot;
        }
        sum_cnots += cnots;
        sum_blocks += std::max(0, b.block - a.block);
        if (a.block >= 0 && b.block > a.block + 1)
          sum_local += local_only_prefix[static_cast<std::size_t>(b.block)] -
                       local_only_prefix[static_cast<std::size_t>(a.block + 1)];
        sum_evict += eviction_prefix[static_cast<std::size_t>(list[j])] -
                     eviction_prefix[static_cast<std::size_t>(list[static_cast<std::size_t>(prev_end)]) + 1];
        ++samples;
      }
      prev_end = static_cast<int>(j);
    }
  }
  if (samples > 0) {
    m.gaps = {samples, sum_cnots / samples, sum_blocks / samples, sum_local / samples, sum_evict / samples};
  }
  return m;
}

void ErrorConfig::check() const {
  for (double e : {unary, local_cnot, relocate, recnot, atom_transfer})
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("error rates must lie in [0, 1]");
}

FidelityBreakdown fidelity_estimate(const Schedule& schedule, const ErrorConfig& errors) {
  errors.check();
  FidelityBreakdown f;
  const int nq = schedule.initial.qubit_count();
  std::vector<Nanos> busy(static_cast<std::size_t>(nq), Nanos{0});
  int teleports = 0;
  for (const auto& in : schedule.instructions) {
    switch (in.kind) {
      case OpKind::Unary: f.unary *= 1.0 - errors.unary; break;
      case OpKind::LocalCnot: f.local_cnot *= 1.0 - errors.local_cnot; break;
      case OpKind::Relocate: f.relocate *= 1.0 - errors.relocate; break;
      case OpKind::ReCnot: f.recnot *= 1.0 - errors.recnot; break;
    }
    if (in.is_teleport()) ++teleports;
    for (int k = 0; k < in.arity(); ++k) busy[static_cast<std::size_t>(in.qubits[static_cast<std::size_t>(k)])] += in.duration;
  }
  f.atom_transfer = std::pow(1.0 - errors.atom_transfer, 2.0 * teleports);
  if (errors.coherence_seconds > 0.0) {
    const Nanos span = schedule.makespan();
    double log_f = 0.0;
    for (const auto b : busy) {
      const double idle_s = static_cast<double>(std::max(Nanos{0}, span - b).count()) * 1e-9;
      log_f -= idle_s / errors.coherence_seconds;
    }
    f.decoherence = std::exp(log_f);
  }
  f.total = f.unary * f.local_cnot * f.relocate * f.recnot * f.atom_transfer * f.decoherence;
  return f;
}

}  // namespace athena

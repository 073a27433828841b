#pragma once

#include <span>
#include <string>
#include <vector>

#include "athena/arch.hpp"
#include "athena/blockform.hpp"
#include "athena/schedule.hpp"

namespace athena {

// Means over consecutive relocation events of the same qubit. A relocation
// event is a maximal run of hops of one qubit with no other instruction on it.
struct RelocationGaps {
  int samples = 0;
  double cnots = 0.0;             // CNOTs on the qubit in between
  double blocks = 0.0;            // block index distance
  double local_only_blocks = 0.0; // blocks strictly between with no teleport at all
  double epr_releases = 0.0;      // eviction events anywhere in between
};

struct Metrics {
  int n_relocate = 0;
  int n_recnot = 0;
  double t_eff = 0.0;
  Nanos makespan{0};
  double relocate_concurrency = 0.0;  // relocations per millisecond of makespan
  double delayed_teleport_fraction = 0.0;
  Nanos mean_wait{0};                 // over delayed teleports
  RelocationGaps gaps;
};

[[nodiscard]] Metrics compute_metrics(const Schedule& schedule, const Topology& topo, double alpha);

struct ErrorConfig {
  double unary = 1e-4;
  double local_cnot = 5e-3;
  double relocate = 2e-2;  // four times a local CNOT
  double recnot = 2e-2;
  double atom_transfer = 1e-3;  // two per teleport
  double coherence_seconds = 1.5;  // zero or negative disables decoherence

  void check() const;
};

struct FidelityBreakdown {
  double unary = 1.0;
  double local_cnot = 1.0;
  double relocate = 1.0;
  double recnot = 1.0;
  double atom_transfer = 1.0;
  double decoherence = 1.0;
  double total = 1.0;
};

// Product of per-operation success rates times exp(-idle / T_coh) per qubit,
// where idle is the makespan minus the qubit's busy time.
[[nodiscard]] FidelityBreakdown fidelity_estimate(const Schedule& schedule, const ErrorConfig& errors);

}  // namespace athena

#pragma once

#include <cstddef>
#include <stdexcept>

#include "athena/arch.hpp"
#include "athena/circuit.hpp"
#include "athena/mapping.hpp"
#include "athena/schedule.hpp"

namespace athena {

struct OracleLimits {
  int max_chips = 3;
  int max_qubits = 8;
  int max_cnots = 12;
  int max_capacity = 2;
};

class OracleLimitError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct OracleResult {
  double t_eff = 0.0;
  int relocations = 0;
  int recnots = 0;
  Schedule witness;  // CNOTs and teleports in execution order, untimed
  std::size_t states = 0;
};

// Minimum relocations + alpha * Re-CNOTs over every schedule built from
// single-hop relocations, adjacent-chip Re-CNOTs and local CNOTs under the
// communication-slot limits. Shortest path over (qubit chips, executed CNOTs);
// local CNOTs run as soon as they are ready, which never costs anything.
[[nodiscard]] OracleResult optimal_teff(const GateDag& dag, const Layout& initial, const Topology& topo, double alpha,
                                        const OracleLimits& limits = {});

}  // namespace athena

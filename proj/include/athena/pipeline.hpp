#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "athena/blockform.hpp"
#include "athena/ees.hpp"
#include "athena/generate.hpp"
#include "athena/mapping.hpp"
#include "athena/metrics.hpp"
#include "athena/umschedule.hpp"
#include "athena/validate.hpp"

namespace athena {

enum class SchedulerKind { Ums, BlockGreedy, PerGate };

[[nodiscard]] std::string_view to_string(SchedulerKind s) noexcept;
[[nodiscard]] SchedulerKind scheduler_from_string(std::string_view name);

struct CompileOptions {
  MapperKind mapper = MapperKind::MinCut;
  SchedulerKind scheduler = SchedulerKind::Ums;
  CostParams params;
  bool ees = true;
  std::uint64_t seed = 7;
  bool keep_trace = false;
  ErrorConfig errors;
};

class ValidationFailure : public std::runtime_error {
 public:
  explicit ValidationFailure(Violation v)
      : std::runtime_error("schedule failed validation (" + std::string(to_string(v.kind)) + "): " + v.message),
        violation_(std::move(v)) {}
  [[nodiscard]] const Violation& violation() const noexcept { return violation_; }

 private:
  Violation violation_;
};

struct CompileResult {
  Layout layout;
  std::vector<Block> blocks;
  Schedule schedule;            // final timed schedule
  Metrics metrics;
  Metrics before_ees;           // equals metrics when the pass is off
  EesReport ees;
  double scheduler_cost = 0.0;  // accumulated cost reported by the scheduler
  std::vector<LayerTrace> trace;
  FidelityBreakdown fidelity;
};

// Map, block, schedule, time (block barriers), optionally run the early pass,
// then validate. Throws ValidationFailure when the result is not clean and
// std::logic_error when the scheduler's own cost disagrees with the stream.
[[nodiscard]] CompileResult compile(const GateDag& dag, const Topology& topo, const CompileOptions& options,
                                    const Layout* fixed_layout = nullptr);

// Bench suites.
struct SuiteInstance {
  std::string name;
  Family family = Family::Qaoa3Reg;
  int qubits = 16;
  std::uint64_t seed = 1;
  int layers = 2;
  int rows = 2;
  int cols = 2;
  int epr_capacity = 3;
};

struct SuiteVariant {
  std::string label;  // ums, ums-noees, blockgreedy, pergate
  SchedulerKind scheduler = SchedulerKind::Ums;
  bool ees = true;
};

[[nodiscard]] SuiteVariant variant_from_string(std::string_view label);

struct Suite {
  std::vector<SuiteInstance> instances;
  std::vector<SuiteVariant> variants;
  CostParams params;
  double epr_hide = 1.0;
  std::uint64_t seed = 7;
};

// TOML or JSON: top-level schedulers, beam, window, alpha, beta, epr_hide,
// seed, and [[instance]] tables with family, qubits, seed, layers, rows, cols,
// epr_capacity, name.
[[nodiscard]] Suite parse_suite(std::string_view source);

struct BenchRow {
  std::string instance;
  std::string variant;
  double t_eff = 0.0;
  double makespan_ms = 0.0;
  int n_relocate = 0;
  int n_recnot = 0;
};

[[nodiscard]] Topology suite_topology(const SuiteInstance& inst, double epr_hide);
[[nodiscard]] GateDag suite_circuit(const SuiteInstance& inst);

// Rows in (instance, variant) order. `threads` <= 0 reads ATHENA_THREADS,
// defaulting to the hardware concurrency.
[[nodiscard]] std::vector<BenchRow> run_suite(const Suite& suite, int threads = 0);

[[nodiscard]] int worker_count(int requested);

// Markdown table with a trailing "Relative" row of mean ratios against the
// blockgreedy variant when it is present.
[[nodiscard]] std::string bench_markdown(const Suite& suite, const std::vector<BenchRow>& rows);
[[nodiscard]] std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace athena

#include "athena/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "athena/baseline.hpp"
#include "athena/config.hpp"
#include "athena/timing.hpp"

namespace athena {

std::string_view to_string(SchedulerKind s) noexcept {
  switch (s) {
    case SchedulerKind::Ums: return "ums";
    case SchedulerKind::BlockGreedy: return "blockgreedy";
    case SchedulerKind::PerGate: return "pergate";
  }
  return "unknown";
}

SchedulerKind scheduler_from_string(std::string_view name) {
  if (name == "ums") return SchedulerKind::Ums;
  if (name == "blockgreedy") return SchedulerKind::BlockGreedy;
  if (name == "pergate") return SchedulerKind::PerGate;
  throw std::invalid_argument("unknown scheduler '" + std::string(name) + "'");
}

CompileResult compile(const GateDag& dag, const Topology& topo, const CompileOptions& options,
                      const Layout* fixed_layout) {
  options.params.check();
  CompileResult out;
  out.layout = fixed_layout != nullptr ? *fixed_layout : map_program(dag, topo, options.mapper, options.seed);

  ScheduleResult sched;
  switch (options.scheduler) {
    case SchedulerKind::Ums:
      out.blocks = form_blocks(dag, out.layout, topo, options.params).blocks;
      sched = schedule_ums(dag, out.blocks, out.layout, topo, options.params, options.keep_trace);
      break;
    case SchedulerKind::BlockGreedy:
      out.blocks = form_blocks(dag, out.layout, topo, options.params).blocks;
      sched = schedule_blockgreedy(dag, out.blocks, out.layout, topo, options.params);
      break;
    case SchedulerKind::PerGate:
      out.blocks = singleton_blocks(dag);
      sched = schedule_pergate(dag, out.layout, topo, options.params);
      break;
  }
  out.scheduler_cost = sched.cost;
  out.trace = std::move(sched.trace);

  Schedule schedule = std::move(sched.schedule);
  insert_unaries(schedule, dag);
  assign_durations(schedule, topo);
  (void)simulate_latency(schedule, topo, TimingMode::BlockBarrier);
  out.before_ees = compute_metrics(schedule, topo, options.params.alpha);
  if (options.ees) {
    schedule = run_ees(schedule, topo, &out.ees);
  } else {
    out.ees.makespan_before = out.ees.makespan_after = schedule.makespan();
  }
  if (auto v = validate(schedule, dag, topo)) throw ValidationFailure(std::move(*v));
  out.metrics = compute_metrics(schedule, topo, options.params.alpha);
  if (std::abs(out.metrics.t_eff - out.scheduler_cost) > 1e-6)
    throw std::logic_error("scheduler cost " + std::to_string(out.scheduler_cost) + " disagrees with stream t_eff " +
                           std::to_string(out.metrics.t_eff));
  out.fidelity = fidelity_estimate(schedule, options.errors);
  out.schedule = std::move(schedule);
  return out;
}

SuiteVariant variant_from_string(std::string_view label) {
  if (label == "ums") return {"ums", SchedulerKind::Ums, true};
  if (label == "ums-noees") return {"ums-noees", SchedulerKind::Ums, false};
  if (label == "blockgreedy") return {"blockgreedy", SchedulerKind::BlockGreedy, false};
  if (label == "pergate") return {"pergate", SchedulerKind::PerGate, false};
  throw std::invalid_argument("unknown scheduler variant '" + std::string(label) + "'");
}

Suite parse_suite(std::string_view source) {
  const auto doc = parse_config(source);
  Suite suite;
  try {
    const auto names = doc.value("schedulers", std::vector<std::string>{"ums", "blockgreedy", "pergate"});
    for (const auto& n : names) suite.variants.push_back(variant_from_string(n));
    suite.params.beam = doc.value("beam", suite.params.beam);
    suite.params.window = doc.value("window", suite.params.window);
    suite.params.alpha = doc.value("alpha", suite.params.alpha);
    suite.params.beta = doc.value("beta", suite.params.beta);
    suite.epr_hide = doc.value("epr_hide", suite.epr_hide);
    suite.seed = doc.value("seed", suite.seed);
    if (doc.contains("instance")) {
      for (const auto& t : doc.at("instance")) {
        SuiteInstance inst;
        inst.family = family_from_string(t.at("family").get<std::string>());
        inst.qubits = t.at("qubits").get<int>();
        inst.seed = t.value("seed", inst.seed);
        inst.layers = t.value("layers", inst.layers);
        inst.rows = t.value("rows", inst.rows);
        inst.cols = t.value("cols", inst.cols);
        inst.epr_capacity = t.value("epr_capacity", inst.epr_capacity);
        std::ostringstream name;
        name << to_string(inst.family) << "-" << inst.qubits << "-s" << inst.seed;
        inst.name = t.value("name", name.str());
        suite.instances.push_back(std::move(inst));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed suite: ") + e.what());
  }
  suite.params.check();
  return suite;
}

Topology suite_topology(const SuiteInstance& inst, double epr_hide) {
  return desk_topology(inst.qubits, inst.rows, inst.cols, inst.epr_capacity).with_epr_hide(epr_hide);
}

GateDag suite_circuit(const SuiteInstance& inst) {
  return generate_benchmark(inst.family, inst.qubits, inst.seed, GeneratorOptions{inst.layers});
}

int worker_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ATHENA_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<BenchRow> run_suite(const Suite& suite, int threads) {
  const std::size_t nv = suite.variants.size();
  const std::size_t total = suite.instances.size() * nv;
  std::vector<BenchRow> rows(total);
  std::vector<std::exception_ptr> errors(total);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (std::size_t job = next++; job < total; job = next++) {
      try {
        const auto& inst = suite.instances[job / nv];
        const auto& var = suite.variants[job % nv];
        const auto topo = suite_topology(inst, suite.epr_hide);
        const auto dag = suite_circuit(inst);
        CompileOptions opt;
        opt.scheduler = var.scheduler;
        opt.ees = var.ees;
        opt.params = suite.params;
        opt.seed = suite.seed;
        const auto res = compile(dag, topo, opt);
        rows[job] = {inst.name, var.label, res.metrics.t_eff, to_millis(res.metrics.makespan), res.metrics.n_relocate,
                     res.metrics.n_recnot};
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const int workers = std::min<int>(worker_count(threads), static_cast<int>(std::max<std::size_t>(1, total)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

std::string bench_markdown(const Suite& suite, const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  out << "| instance | scheduler | t_eff | latency_ms | relocations | recnots |\n";
  out << "|---|---|---|---|---|---|\n";
  for (const auto& r : rows)
    out << "| " << r.instance << " | " << r.variant << " | " << r.t_eff << " | " << r.makespan_ms << " | "
        << r.n_relocate << " | " << r.n_recnot << " |\n";

  std::map<std::string, const BenchRow*> reference;
  for (const auto& r : rows)
    if (r.variant == "blockgreedy") reference[r.instance] = &r;
  if (reference.empty()) return out.str();
  for (const auto& v : suite.variants) {
    double teff = 0.0;
    double lat = 0.0;
    int n = 0;
    for (const auto& r : rows) {
      if (r.variant != v.label) continue;
      const auto it = reference.find(r.instance);
      if (it == reference.end()) continue;
      const auto& b = *it->second;
      teff += b.t_eff > 0 ? r.t_eff / b.t_eff : (r.t_eff > 0 ? 0.0 : 1.0);
      lat += b.makespan_ms > 0 ? r.makespan_ms / b.makespan_ms : 1.0;
      ++n;
    }
    if (n == 0) continue;
    out << "| Relative | " << v.label << " | " << teff / n << " | " << lat / n << " | | |\n";
  }
  return out.str();
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "instance,scheduler,t_eff,latency_ms,relocations,recnots\n";
  for (const auto& r : rows)
    out << r.instance << "," << r.variant << "," << r.t_eff << "," << r.makespan_ms << "," << r.n_relocate << ","
        << r.n_recnot << "\n";
  return out.str();
}

}  // namespace athena

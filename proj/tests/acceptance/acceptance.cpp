// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "athena/io.hpp"
#include "athena/oracle.hpp"
#include "athena/pipeline.hpp"
#include "support/generators.hpp"

namespace {

using namespace athena;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(ATHENA_FIXTURE_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

// Runs body(i) for i in [0, n) on a small pool; results land in caller-owned slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(worker_count(0), static_cast<int>(n)));
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct SuiteCase {
  SuiteInstance inst;
  Topology topo;
  GateDag dag;
};

std::vector<SuiteCase> load_cases(const std::string& name, double epr_hide = 1.0) {
  const auto suite = parse_suite(fixture(name));
  std::vector<SuiteCase> out;
  for (const auto& inst : suite.instances) out.push_back({inst, suite_topology(inst, epr_hide), suite_circuit(inst)});
  return out;
}

CompileOptions options(SchedulerKind s, bool ees) {
  CompileOptions o;
  o.scheduler = s;
  o.ees = ees;
  return o;
}

double ratio(double num, double den) {
  if (den > 0.0) return num / den;
  return num > 0.0 ? 2.0 : 1.0;
}

Outcome epr_math() {
  const EprModel model;
  const double p = epr_success_prob(model, 52);
  const double latency_us = to_micros(epr_generation_latency(model));
  const bool ok = p >= 0.999 && p <= 0.9995 && std::abs(latency_us - 259.1) <= 0.5;
  return {ok, "p(52)=" + fmt("%.6f", p) + " latency_us=" + fmt("%.2f", latency_us)};
}

Outcome alpha_consistency() {
  const double a = TimingModel{}.alpha_derived();
  return {std::abs(a - 1.769) <= 0.01, "t_recnot/t_relocate=" + fmt("%.4f", a)};
}

Outcome beta_anchor() {
  const double w = std::pow(CostParams{}.beta, 10);
  return {std::abs(w - 0.25) <= 0.01, "beta^10=" + fmt("%.4f", w)};
}

Outcome walkthrough() {
  const auto topo = load_topology(fixture("line3_arch.toml"));
  const auto dag = parse_circuit(fixture("line3_circuit.json"), CircuitFormat::Json);
  const Layout layout(topo, {0, 0, 1, 1, 2});
  const auto r = compile(dag, topo, options(SchedulerKind::BlockGreedy, false), &layout);

  struct Step {
    OpKind kind;
    int qubit;
    int from;
    int to;
    bool eviction;
  };
  // Block 1 on the middle chip via qubits 0 and 4, release qubit 0 back to
  // the first chip, then bring qubit 1 over for block 2.
  const std::vector<Step> expected{
      {OpKind::Relocate, 0, 0, 1, false}, {OpKind::LocalCnot, 0, 1, 1, false}, {OpKind::Relocate, 4, 2, 1, false},
      {OpKind::LocalCnot, 0, 1, 1, false}, {OpKind::LocalCnot, 3, 1, 1, false}, {OpKind::Relocate, 0, 1, 0, true},
      {OpKind::Relocate, 1, 0, 1, false}, {OpKind::LocalCnot, 1, 1, 1, false}, {OpKind::LocalCnot, 1, 1, 1, false},
      {OpKind::LocalCnot, 2, 1, 1, false}};
  const auto& got = r.schedule.instructions;
  bool ok = got.size() == expected.size() && r.blocks.size() == 2;
  for (std::size_t i = 0; ok && i < got.size(); ++i) {
    const auto& e = expected[i];
    ok = got[i].kind == e.kind && got[i].qubits[0] == e.qubit && got[i].from_chip == e.from &&
         got[i].to_chip == e.to && got[i].eviction == e.eviction;
  }
  std::string seq;
  for (const auto& in : got) seq += std::string(seq.empty() ? "" : ",") + std::string(to_string(in.kind));
  return {ok, "t_eff=" + fmt("%.2f", r.metrics.t_eff) + " sequence=" + seq};
}

struct OracleRow {
  double oracle = 0.0;
  double teff[4] = {0, 0, 0, 0};  // pergate, blockgreedy, ums, ums-noees
  bool valid = true;
};

std::vector<OracleRow> oracle_rows() {
  constexpr std::size_t kInstances = 200;
  std::vector<OracleRow> rows(kInstances);
  parallel_for(kInstances, [&](std::size_t i) {
    const auto inst = testing::random_instance(0xACE0 + i);
    auto& row = rows[i];
    row.oracle = optimal_teff(inst.dag, inst.layout, inst.topo, CostParams{}.alpha).t_eff;
    const std::pair<SchedulerKind, bool> variants[4] = {
        {SchedulerKind::PerGate, false}, {SchedulerKind::BlockGreedy, false}, {SchedulerKind::Ums, true},
        {SchedulerKind::Ums, false}};
    for (int v = 0; v < 4; ++v) {
      const auto r = compile(inst.dag, inst.topo, options(variants[v].first, variants[v].second), &inst.layout);
      row.teff[v] = r.metrics.t_eff;
      row.valid = row.valid && !validate(r.schedule, inst.dag, inst.topo).has_value();
    }
  });
  return rows;
}

Outcome oracle_soundness(const std::vector<OracleRow>& rows) {
  bool bound = true;
  double gap_ums = 0.0;
  double gap_bg = 0.0;
  int worst = -1;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (double t : rows[i].teff)
      if (rows[i].oracle > t + 1e-9) {
        bound = false;
        worst = static_cast<int>(i);
      }
    gap_ums += rows[i].teff[2] - rows[i].oracle;
    gap_bg += rows[i].teff[1] - rows[i].oracle;
  }
  gap_ums /= static_cast<double>(rows.size());
  gap_bg /= static_cast<double>(rows.size());
  std::string detail = std::to_string(rows.size()) + " instances, mean gap ums=" + fmt("%.3f", gap_ums) +
                       " blockgreedy=" + fmt("%.3f", gap_bg);
  if (!bound) detail += ", oracle above a heuristic on instance " + std::to_string(worst);
  return {bound && gap_ums <= gap_bg + 1e-12, detail};
}

struct DeskRow {
  CompileResult ums;
  CompileResult noees;
  CompileResult greedy;
  CompileResult pergate;
};

std::vector<DeskRow> desk_rows(const std::vector<SuiteCase>& cases) {
  std::vector<DeskRow> rows(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const auto& c = cases[i];
    rows[i].ums = compile(c.dag, c.topo, options(SchedulerKind::Ums, true));
    rows[i].noees = compile(c.dag, c.topo, options(SchedulerKind::Ums, false));
    rows[i].greedy = compile(c.dag, c.topo, options(SchedulerKind::BlockGreedy, false));
    rows[i].pergate = compile(c.dag, c.topo, options(SchedulerKind::PerGate, false));
  });
  return rows;
}

Outcome improvement(const std::vector<DeskRow>& rows) {
  double teff = 0.0;
  double span = 0.0;
  for (const auto& r : rows) {
    teff += ratio(r.ums.metrics.t_eff, r.greedy.metrics.t_eff);
    span += ratio(static_cast<double>(r.ums.metrics.makespan.count()),
                  static_cast<double>(r.greedy.metrics.makespan.count()));
  }
  teff /= static_cast<double>(rows.size());
  span /= static_cast<double>(rows.size());
  const bool ok = rows.size() >= 20 && teff <= 0.90 && span <= 0.75;
  return {ok, std::to_string(rows.size()) + " instances, mean t_eff ratio=" + fmt("%.3f", teff) +
                  " (<=0.90), mean makespan ratio=" + fmt("%.3f", span) + " (<=0.75)"};
}

Outcome ees_properties(const std::vector<DeskRow>& rows) {
  bool teff_equal = true;
  bool span_ok = true;
  int concurrency_up = 0;
  for (const auto& r : rows) {
    teff_equal = teff_equal && r.ums.metrics.n_relocate == r.noees.metrics.n_relocate &&
                 r.ums.metrics.n_recnot == r.noees.metrics.n_recnot && r.ums.metrics.t_eff == r.noees.metrics.t_eff;
    span_ok = span_ok && r.ums.metrics.makespan <= r.noees.metrics.makespan;
    concurrency_up += r.ums.metrics.relocate_concurrency >= r.noees.metrics.relocate_concurrency;
  }
  const double share = static_cast<double>(concurrency_up) / static_cast<double>(rows.size());
  return {teff_equal && span_ok && share >= 0.80,
          std::string("t_eff equal=") + (teff_equal ? "yes" : "no") + ", makespan never worse=" +
              (span_ok ? "yes" : "no") + ", concurrency up on " + fmt("%.0f", 100.0 * share) + "%"};
}

Outcome validator_suite(const std::vector<SuiteCase>& cases, const std::vector<DeskRow>& rows,
                        const std::vector<OracleRow>& oracle) {
  int checked = 0;
  bool clean = true;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto* r : {&rows[i].ums, &rows[i].noees, &rows[i].greedy, &rows[i].pergate}) {
      clean = clean && !validate(r->schedule, cases[i].dag, cases[i].topo).has_value();
      ++checked;
    }
  for (const auto& o : oracle) {
    clean = clean && o.valid;
    checked += 4;
  }

  const auto topo = load_topology(fixture("line3_arch.toml"));
  const auto dag = parse_circuit(fixture("line3_circuit.json"), CircuitFormat::Json);
  const std::pair<const char*, ViolationClass> negatives[] = {{"bad_capacity.json", ViolationClass::Capacity},
                                                              {"bad_dependency.json", ViolationClass::Dependency},
                                                              {"bad_nonlocal.json", ViolationClass::NonlocalCnot}};
  std::string seen;
  bool rejected = true;
  for (const auto& [file, kind] : negatives) {
    const auto v = validate(schedule_from_json(fixture(file), topo), dag, topo);
    rejected = rejected && v && v->kind == kind;
    seen += std::string(seen.empty() ? "" : ",") + (v ? std::string(to_string(v->kind)) : "accepted");
  }
  return {clean && rejected, std::to_string(checked) + " schedules clean=" + (clean ? "yes" : "no") +
                                 ", negatives=" + seen};
}

Outcome beam_monotonicity() {
  const auto cases = load_cases("beam_suite.toml");
  struct Row {
    double w1 = 0, w4 = 0, w16 = 0, k0 = 0;
  };
  std::vector<Row> rows(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    const auto& c = cases[i];
    auto run = [&](int beam, int window) {
      auto o = options(SchedulerKind::Ums, true);
      o.params.beam = beam;
      o.params.window = window;
      return compile(c.dag, c.topo, o).metrics.t_eff;
    };
    rows[i] = {run(1, 4), run(4, 4), run(16, 4), run(16, 0)};
  });
  bool ordered = true;
  double k4 = 0.0;
  double k0 = 0.0;
  std::string breaks;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!(r.w16 <= r.w4 + 1e-9 && r.w4 <= r.w1 + 1e-9)) {
      ordered = false;
      breaks += " " + cases[i].inst.name + "(" + fmt("%.2f", r.w1) + "/" + fmt("%.2f", r.w4) + "/" +
                fmt("%.2f", r.w16) + ")";
    }
    k4 += r.w16;
    k0 += r.k0;
  }
  k4 /= static_cast<double>(rows.size());
  k0 /= static_cast<double>(rows.size());
  std::string detail = std::to_string(rows.size()) + " instances, w16<=w4<=w1 " + (ordered ? "everywhere" : "broken:") +
                       breaks + ", mean t_eff k=4 " + fmt("%.3f", k4) + " vs k=0 " + fmt("%.3f", k0);
  return {ordered && k4 <= k0 + 1e-9, detail};
}

Outcome determinism(const std::vector<SuiteCase>& cases) {
  std::vector<char> same(cases.size(), 0);
  // Two passes run concurrently so shared state between compilations would show.
  parallel_for(cases.size() * 2, [&](std::size_t job) {
    if (job % 2 == 1) return;
    const auto& c = cases[job / 2];
    const auto opt = options(SchedulerKind::Ums, true);
    auto render = [&] {
      const auto r = compile(c.dag, c.topo, opt);
      const StatsContext ctx{"ums", true, opt.params, c.topo.timing().epr_hide, opt.seed};
      return schedule_to_json(r.schedule) + stats_to_json(r, ctx);
    };
    std::string first;
    std::thread t([&] { first = render(); });
    const auto second = render();
    t.join();
    same[job / 2] = first == second;
  });
  int equal = 0;
  for (char s : same) equal += s;
  return {equal == static_cast<int>(cases.size()),
          std::to_string(equal) + "/" + std::to_string(cases.size()) + " instances byte-identical"};
}

Outcome hiding_sweep() {
  const double hs[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const auto base = load_cases("desk_suite.toml");
  struct Row {
    long long ums[5];
    long long greedy[5];
  };
  std::vector<Row> rows(base.size());
  parallel_for(base.size(), [&](std::size_t i) {
    for (int k = 0; k < 5; ++k) {
      const auto topo = base[i].topo.with_epr_hide(hs[k]);
      rows[i].ums[k] = compile(base[i].dag, topo, options(SchedulerKind::Ums, true)).metrics.makespan.count();
      rows[i].greedy[k] = compile(base[i].dag, topo, options(SchedulerKind::BlockGreedy, false)).metrics.makespan.count();
    }
  });
  int monotone = 0;
  int below = 0;
  std::string breaks;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool mono = true;
    bool le = true;
    for (int k = 0; k < 5; ++k) {
      if (k > 0 && rows[i].ums[k] > rows[i].ums[k - 1]) mono = false;
      if (rows[i].ums[k] > rows[i].greedy[k]) le = false;
    }
    monotone += mono;
    below += le;
    if (!mono || !le) breaks += " " + base[i].inst.name;
  }
  const int n = static_cast<int>(rows.size());
  std::string detail = "monotone on " + std::to_string(monotone) + "/" + std::to_string(n) +
                       ", ums<=blockgreedy at every h on " + std::to_string(below) + "/" + std::to_string(n);
  if (!breaks.empty()) detail += ", failing:" + breaks;
  return {monotone == n && below == n, detail};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s criterion %d: %s: %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs);
    std::fflush(stdout);
  };

  report(1, "EPR success probability and generation latency", epr_math);
  report(2, "Re-CNOT to relocation latency ratio", alpha_consistency);
  report(3, "lookahead decay anchor", beta_anchor);
  report(4, "three-chip walkthrough sequence", walkthrough);

  std::vector<OracleRow> oracle;
  report(5, "oracle lower bound on small instances", [&] {
    oracle = oracle_rows();
    return oracle_soundness(oracle);
  });

  std::vector<SuiteCase> cases;
  std::vector<DeskRow> desk;
  report(6, "improvement over blockgreedy on the desk suite", [&] {
    cases = load_cases("desk_suite.toml");
    desk = desk_rows(cases);
    return improvement(desk);
  });
  report(7, "early scheduling properties", [&] {
    if (desk.empty()) throw std::runtime_error("desk suite did not compile");
    return ees_properties(desk);
  });
  report(8, "validator accepts every schedule and rejects the negatives", [&] {
    if (desk.empty()) throw std::runtime_error("desk suite did not compile");
    return validator_suite(cases, desk, oracle);
  });
  report(9, "beam width and window monotonicity", beam_monotonicity);
  report(10, "byte-identical reruns", [&] { return determinism(load_cases("desk_suite.toml")); });
  report(11, "EPR hiding sweep", hiding_sweep);

  std::printf("%s: %d of 11 criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}

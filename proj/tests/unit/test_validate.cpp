#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "athena/io.hpp"
#include "athena/metrics.hpp"
#include "athena/pipeline.hpp"
#include "athena/timing.hpp"
#include "athena/validate.hpp"
#include "support/generators.hpp"

namespace athena {
namespace {

Topology line(int chips, int compute, int capacity, double hide = 1.0) {
  TopologySpec spec;
  spec.rows = 1;
  spec.cols = chips;
  spec.qubits_per_chip = compute + capacity;
  spec.compute_fraction = static_cast<double>(compute) / spec.qubits_per_chip + 1e-6;
  spec.timing.epr_hide = hide;
  return Topology(spec);
}

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(ATHENA_FIXTURE_DIR) + "/" + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Back-to-back fixed durations, for streams the timing model refuses to replay.
Schedule sequential(Schedule s) {
  Nanos clock{0};
  for (auto& in : s.instructions) {
    in.start = clock;
    in.duration = Nanos{1000};
    clock += in.duration;
  }
  return s;
}

// Untimed stream -> durations -> ASAP times.
Schedule timed(Schedule s, const Topology& topo) {
  assign_durations(s, topo);
  (void)simulate_latency(s, topo, TimingMode::Asap);
  return s;
}

struct Fixture2 {
  Topology topo = line(2, 2, 1);
  GateDag dag = build_dag({make_cnot(0, 2)}, 4);
  Schedule schedule;
  Fixture2() {
    schedule.initial = Layout(topo, {0, 0, 1, 1});
    schedule.instructions = {make_relocate(0, 0, 1, 0, 0, false), make_local_cnot(dag.gate(0), 1, 0)};
    schedule = timed(schedule, topo);
  }
};

TEST(Validate, AcceptsCorrectSchedule) {
  Fixture2 f;
  EXPECT_FALSE(validate(f.schedule, f.dag, f.topo).has_value());
}

TEST(Validate, RejectsCnotBeforeRelocationEnds) {
  Fixture2 f;
  f.schedule.instructions[1].start = f.schedule.instructions[0].start;
  const auto v = validate(f.schedule, f.dag, f.topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::NonlocalCnot);
  EXPECT_EQ(v->instruction, 1);
}

TEST(Validate, RejectsMissingGate) {
  Fixture2 f;
  f.schedule.instructions.pop_back();
  const auto v = validate(f.schedule, f.dag, f.topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::MissingGate);
}

TEST(Validate, RejectsWrongOrigin) {
  Fixture2 f;
  f.schedule.instructions[0].from_chip = 1;
  f.schedule.instructions[0].to_chip = 0;
  const auto v = validate(f.schedule, f.dag, f.topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::Location);
}

TEST(Validate, RejectsTwoHopTeleport) {
  const auto topo = line(3, 2, 1);
  const auto dag = build_dag({make_cnot(0, 4)}, 6);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1, 2, 2});
  s.instructions = {make_relocate(0, 0, 2, 0, 0, false), make_local_cnot(dag.gate(0), 2, 0)};
  const auto v = validate(sequential(s), dag, topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::Adjacency);

  Schedule r;
  r.initial = s.initial;
  r.instructions = {make_recnot(dag.gate(0), 0, 2, 0)};
  const auto w = validate(sequential(r), dag, topo);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->kind, ViolationClass::Adjacency);
}

TEST(Validate, RejectsCapacityBreach) {
  const auto topo = line(2, 2, 1);
  const auto dag = build_dag({make_cnot(0, 1)}, 4);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1});
  s.instructions = {make_relocate(0, 0, 1, -1, 0, false), make_relocate(1, 0, 1, -1, 0, false),
                    make_local_cnot(dag.gate(0), 1, 0)};
  const auto v = validate(sequential(s), dag, topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::Capacity);
  EXPECT_EQ(v->instruction, 1);
}

TEST(Validate, RejectsSharedLink) {
  const auto topo = line(2, 2, 2);
  const auto dag = build_dag({make_cnot(0, 1)}, 4);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1});
  s.instructions = {make_relocate(0, 0, 1, -1, 0, false), make_relocate(1, 0, 1, -1, 0, false),
                    make_local_cnot(dag.gate(0), 1, 0)};
  assign_durations(s, topo);
  s.instructions[2].start = s.instructions[0].end();  // both hops overlap on the single link
  const auto v = validate(s, dag, topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::ResourceOverlap);
}

TEST(Validate, RejectsDependencyBreach) {
  const auto topo = line(1, 3, 1);
  const auto dag = build_dag({make_cnot(0, 1), make_cnot(1, 2)}, 3);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 0});
  s.instructions = {make_local_cnot(dag.gate(1), 0, 0), make_local_cnot(dag.gate(0), 0, 0)};
  const auto v = validate(timed(s, topo), dag, topo);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->kind, ViolationClass::Dependency);
}

TEST(Validate, NegativeFixtures) {
  const auto topo = load_topology(fixture("line3_arch.toml"));
  const auto dag = parse_circuit(fixture("line3_circuit.json"), CircuitFormat::Json);
  const std::pair<const char*, ViolationClass> cases[] = {{"bad_capacity.json", ViolationClass::Capacity},
                                                          {"bad_dependency.json", ViolationClass::Dependency},
                                                          {"bad_nonlocal.json", ViolationClass::NonlocalCnot}};
  for (const auto& [file, kind] : cases) {
    const auto v = validate(schedule_from_json(fixture(file), topo), dag, topo);
    ASSERT_TRUE(v.has_value()) << file;
    EXPECT_EQ(v->kind, kind) << file;
  }
}

TEST(Timing, SingleRelocationWithHiddenEpr) {
  const auto topo = line(2, 2, 1, 1.0);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1});
  s.instructions = {make_relocate(0, 0, 1, -1, 0, false)};
  EXPECT_EQ(timed(s, topo).makespan(), Nanos{1'300'000});
}

TEST(Timing, ReCnotPaysExposedEpr) {
  const auto topo = line(2, 2, 1, 0.0);
  const auto dag = build_dag({make_cnot(0, 2)}, 4);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1});
  s.instructions = {make_recnot(dag.gate(0), 0, 1, 0)};
  EXPECT_EQ(timed(s, topo).makespan(), Nanos{2'300'000 + 259'000});
}

TEST(Timing, DisjointHopsRunInParallel) {
  TopologySpec spec;
  spec.rows = 2;
  spec.cols = 2;
  spec.qubits_per_chip = 4;
  spec.compute_fraction = 0.5;
  const Topology topo(spec);
  Schedule s;
  s.initial = Layout(topo, {0, 1, 2, 3});
  s.instructions = {make_relocate(0, 0, 1, -1, 0, false), make_relocate(2, 2, 3, -1, 0, false)};
  const auto t = timed(s, topo);
  EXPECT_EQ(t.makespan(), Nanos{1'300'000});
  EXPECT_EQ(t.instructions[1].start, Nanos{0});
}

TEST(Timing, SharedLinkSerialises) {
  const auto topo = line(2, 2, 2);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1});
  s.instructions = {make_relocate(0, 0, 1, -1, 0, false), make_relocate(1, 0, 1, -1, 0, false)};
  EXPECT_EQ(timed(s, topo).makespan(), Nanos{2'600'000});
}

TEST(Timing, BarrierWaitsForEarlierBlocks) {
  const auto topo = line(1, 4, 1);
  const auto dag = build_dag({make_cnot(0, 1), make_cnot(2, 3)}, 4);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 0, 0});
  s.instructions = {make_local_cnot(dag.gate(0), 0, 0), make_local_cnot(dag.gate(1), 0, 1)};
  assign_durations(s, topo);
  auto asap = s;
  EXPECT_EQ(simulate_latency(asap, topo, TimingMode::Asap), s.instructions[0].duration);
  EXPECT_EQ(simulate_latency(s, topo, TimingMode::BlockBarrier),
            s.instructions[0].duration + s.instructions[1].duration);
}

TEST(Timing, AsapIgnoresIndependentListingOrder) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto inst = testing::random_instance(seed);
    CompileOptions opt;
    opt.ees = false;
    const auto r = compile(inst.dag, inst.topo, opt, &inst.layout);
    Schedule a = r.schedule;
    (void)simulate_latency(a, inst.topo, TimingMode::Asap);
    // Swap adjacent instructions that share no qubit, chip slot or link.
    Schedule b = a;
    auto& v = b.instructions;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const auto& x = v[i];
      const auto& y = v[i + 1];
      if (x.kind != OpKind::LocalCnot && x.kind != OpKind::Unary) continue;
      if (y.kind != OpKind::LocalCnot && y.kind != OpKind::Unary) continue;
      bool shared = false;
      for (int k = 0; k < x.arity(); ++k)
        for (int l = 0; l < y.arity(); ++l) shared = shared || x.qubits[k] == y.qubits[l];
      if (!shared) {
        std::swap(v[i], v[i + 1]);
        ++i;
      }
    }
    EXPECT_EQ(simulate_latency(b, inst.topo, TimingMode::Asap), a.makespan());
  }
}

TEST(Metrics, EffectiveTeleportations) {
  const auto topo = line(2, 2, 2);
  const auto dag = build_dag({make_cnot(0, 2)}, 4);
  Schedule s;
  s.initial = Layout(topo, {0, 0, 1, 1});
  s.instructions = {make_relocate(1, 0, 1, -1, 0, false), make_relocate(1, 1, 0, -1, 0, false),
                    make_relocate(1, 0, 1, -1, 0, false), make_recnot(dag.gate(0), 0, 1, 0)};
  s = timed(s, topo);
  const auto m = compute_metrics(s, topo, 1.77);
  EXPECT_EQ(m.n_relocate, 3);
  EXPECT_EQ(m.n_recnot, 1);
  EXPECT_NEAR(m.t_eff, 4.77, 1e-12);
  EXPECT_GT(m.relocate_concurrency, 0.0);

  Schedule empty;
  empty.initial = s.initial;
  const auto z = compute_metrics(empty, topo, 1.77);
  EXPECT_EQ(z.t_eff, 0.0);
  EXPECT_EQ(z.delayed_teleport_fraction, 0.0);
}

TEST(Metrics, FractionsStayInRange) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto inst = testing::random_instance(seed);
    const auto r = compile(inst.dag, inst.topo, CompileOptions{}, &inst.layout);
    const auto& m = r.metrics;
    EXPECT_GE(m.delayed_teleport_fraction, 0.0);
    EXPECT_LE(m.delayed_teleport_fraction, 1.0);
    EXPECT_NEAR(m.t_eff, m.n_relocate + 1.77 * m.n_recnot, 1e-9);
    EXPECT_NEAR(m.t_eff, r.scheduler_cost, 1e-9);
    EXPECT_GE(r.fidelity.total, 0.0);
    EXPECT_LE(r.fidelity.total, 1.0);
  }
}

TEST(Fidelity, PerfectHardwareIsExact) {
  Fixture2 f;
  ErrorConfig perfect;
  perfect.unary = perfect.local_cnot = perfect.relocate = perfect.recnot = perfect.atom_transfer = 0.0;
  perfect.coherence_seconds = 0.0;
  const auto fb = fidelity_estimate(f.schedule, perfect);
  EXPECT_DOUBLE_EQ(fb.total, 1.0);

  ErrorConfig lossy;
  lossy.coherence_seconds = 0.0;
  const auto lb = fidelity_estimate(f.schedule, lossy);
  EXPECT_NEAR(lb.relocate, 1.0 - lossy.relocate, 1e-12);
  EXPECT_NEAR(lb.local_cnot, 1.0 - lossy.local_cnot, 1e-12);
  EXPECT_NEAR(lb.total, lb.unary * lb.local_cnot * lb.relocate * lb.recnot * lb.atom_transfer * lb.decoherence, 1e-12);
  EXPECT_DOUBLE_EQ(ErrorConfig{}.relocate, 4 * ErrorConfig{}.local_cnot);
}

TEST(Fidelity, FewerTeleportsNeverHurt) {
  const auto suite = parse_suite(fixture("small_suite.toml"));
  for (const auto& inst : suite.instances) {
    const auto topo = suite_topology(inst, 1.0);
    const auto dag = suite_circuit(inst);
    CompileOptions ums;
    ums.errors.coherence_seconds = 0.0;
    CompileOptions pergate = ums;
    pergate.scheduler = SchedulerKind::PerGate;
    const auto a = compile(dag, topo, ums);
    const auto b = compile(dag, topo, pergate);
    if (a.metrics.n_relocate <= b.metrics.n_relocate && a.metrics.n_recnot <= b.metrics.n_recnot)
      EXPECT_GE(a.fidelity.total, b.fidelity.total) << inst.name;
  }
}

TEST(Io, ScheduleJsonRoundTrip) {
  const auto inst = testing::random_instance(17);
  const auto r = compile(inst.dag, inst.topo, CompileOptions{}, &inst.layout);
  const auto text = schedule_to_json(r.schedule);
  const auto back = schedule_from_json(text, inst.topo);
  EXPECT_EQ(back.instructions, r.schedule.instructions);
  EXPECT_TRUE(back.initial.same_chips(r.schedule.initial));
  EXPECT_EQ(schedule_to_json(back), text);
  EXPECT_NE(text.find("\"schema\": 1"), std::string::npos);
  EXPECT_THROW((void)schedule_from_json(R"({"schema": 2})", inst.topo), std::invalid_argument);
}

TEST(Io, GanttHasOneRowPerInstruction) {
  Fixture2 f;
  const auto csv = gantt_csv(f.schedule);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(csv.rfind("index,op,", 0), 0u);
}

}  // namespace
}  // namespace athena

#include "athena/io.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace athena {

namespace {

using nlohmann::json;

json layout_json(const Layout& layout) {
  json arr = json::array();
  for (int q = 0; q < layout.qubit_count(); ++q) {
    const auto p = layout.placement(q);
    arr.push_back({{"qubit", q}, {"chip", p.chip}, {"slot", p.slot}});
  }
  return arr;
}

// Infinity is not representable in JSON.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string schedule_to_json(const Schedule& schedule) {
  json instrs = json::array();
  for (const auto& in : schedule.instructions) {
    json qs = json::array();
    for (int k = 0; k < in.arity(); ++k) qs.push_back(in.qubits[static_cast<std::size_t>(k)]);
    instrs.push_back({{"op", to_string(in.kind)},
                      {"qubits", std::move(qs)},
                      {"from", in.from_chip},
                      {"to", in.to_chip},
                      {"gate", in.gate},
                      {"block", in.block},
                      {"eviction", in.eviction},
                      {"start_ns", in.start.count()},
                      {"duration_ns", in.duration.count()}});
  }
  json doc{{"schema", kSchemaVersion},
           {"qubits", schedule.initial.qubit_count()},
           {"initial_layout", layout_json(schedule.initial)},
           {"instructions", std::move(instrs)}};
  return doc.dump(1) + "\n";
}

Schedule schedule_from_json(std::string_view text, const Topology& topo) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed schedule json: ") + e.what());
  }
  try {
    if (doc.at("schema").get<int>() != kSchemaVersion) throw std::invalid_argument("unsupported schedule schema");
    const int n = doc.at("qubits").get<int>();
    std::vector<int> home(static_cast<std::size_t>(n), -1);
    for (const auto& e : doc.at("initial_layout")) {
      const int q = e.at("qubit").get<int>();
      if (q < 0 || q >= n) throw std::invalid_argument("initial layout names an unknown qubit");
      home[static_cast<std::size_t>(q)] = e.at("chip").get<int>();
    }
    for (int c : home)
      if (c < 0) throw std::invalid_argument("initial layout misses a qubit");
    Schedule s;
    s.initial = Layout(topo, home);
    for (const auto& e : doc.at("instructions")) {
      Instruction in;
      in.kind = op_kind_from_string(e.at("op").get<std::string>());
      const auto qs = e.at("qubits").get<std::vector<int>>();
      if (static_cast<int>(qs.size()) != in.arity()) throw std::invalid_argument("instruction has wrong operand count");
      for (std::size_t k = 0; k < qs.size(); ++k) in.qubits[k] = qs[k];
      in.from_chip = e.at("from").get<int>();
      in.to_chip = e.at("to").get<int>();
      in.gate = e.value("gate", -1);
      in.block = e.value("block", -1);
      in.eviction = e.value("eviction", false);
      in.start = Nanos{e.at("start_ns").get<long long>()};
      in.duration = Nanos{e.at("duration_ns").get<long long>()};
      s.instructions.push_back(in);
    }
    return s;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed schedule: ") + e.what());
  }
}

std::string stats_to_json(const CompileResult& r, const StatsContext& ctx) {
  auto metrics_json = [](const Metrics& m) {
    return json{{"n_relocate", m.n_relocate},
                {"n_recnot", m.n_recnot},
                {"t_eff", m.t_eff},
                {"makespan_ns", m.makespan.count()},
                {"relocate_concurrency_per_ms", m.relocate_concurrency},
                {"delayed_teleport_fraction", m.delayed_teleport_fraction},
                {"mean_wait_ns", m.mean_wait.count()},
                {"relocation_gaps",
                 {{"samples", m.gaps.samples},
                  {"cnots", m.gaps.cnots},
                  {"blocks", m.gaps.blocks},
                  {"local_only_blocks", m.gaps.local_only_blocks},
                  {"epr_releases", m.gaps.epr_releases}}}};
  };
  const auto& f = r.fidelity;
  json doc{{"schema", kSchemaVersion},
           {"scheduler", ctx.scheduler},
           {"ees", ctx.ees},
           {"params",
            {{"alpha", ctx.params.alpha},
             {"beta", ctx.params.beta},
             {"beam", ctx.params.beam},
             {"window", ctx.params.window},
             {"max_block", ctx.params.max_block},
             {"epr_hide", ctx.epr_hide},
             {"seed", ctx.seed}}},
           {"blocks", r.blocks.size()},
           {"scheduler_cost", r.scheduler_cost},
           {"metrics", metrics_json(r.metrics)},
           {"before_ees", metrics_json(r.before_ees)},
           {"ees_report",
            {{"makespan_before_ns", r.ees.makespan_before.count()},
             {"makespan_after_ns", r.ees.makespan_after.count()},
             {"moved", r.ees.moved},
             {"capacity_limited", r.ees.capacity_limited}}},
           {"fidelity",
            {{"unary", f.unary},
             {"local_cnot", f.local_cnot},
             {"relocate", f.relocate},
             {"recnot", f.recnot},
             {"atom_transfer", f.atom_transfer},
             {"decoherence", f.decoherence},
             {"total", f.total}}}};
  return doc.dump(1) + "\n";
}

std::string gantt_csv(const Schedule& schedule) {
  std::ostringstream out;
  out << "index,op,qubits,from,to,gate,block,eviction,start_ns,end_ns\n";
  for (std::size_t i = 0; i < schedule.instructions.size(); ++i) {
    const auto& in = schedule.instructions[i];
    out << i << "," << to_string(in.kind) << ",";
    for (int k = 0; k < in.arity(); ++k) out << (k ? " " : "") << in.qubits[static_cast<std::size_t>(k)];
    out << "," << in.from_chip << "," << in.to_chip << "," << in.gate << "," << in.block << ","
        << (in.eviction ? 1 : 0) << "," << in.start.count() << "," << in.end().count() << "\n";
  }
  return out.str();
}

std::string blocks_to_json(std::span<const Block> blocks) {
  json arr = json::array();
  for (const auto& b : blocks) {
    json costs = json::array();
    for (double c : b.chip_cost) costs.push_back(finite_or_null(c));
    arr.push_back({{"id", b.id}, {"gates", b.gates}, {"qubits", b.qubits}, {"chip", b.chip}, {"chip_cost", costs}});
  }
  return json{{"schema", kSchemaVersion}, {"blocks", std::move(arr)}}.dump(1) + "\n";
}

std::string trace_to_jsonl(std::span<const LayerTrace> trace) {
  std::ostringstream out;
  for (const auto& t : trace)
    out << json{{"layer", t.layer}, {"block", t.block}, {"gate", t.gate}, {"costs", t.costs}, {"scores", t.scores}}.dump()
        << "\n";
  return out.str();
}

std::string layout_to_json(const Layout& layout) {
  return json{{"schema", kSchemaVersion}, {"layout", layout_json(layout)}}.dump(1) + "\n";
}

}  // namespace athena

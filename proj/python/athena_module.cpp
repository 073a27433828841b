#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "athena/io.hpp"
#include "athena/oracle.hpp"
#include "athena/pipeline.hpp"

namespace py = pybind11;
using namespace athena;

namespace {

CircuitFormat circuit_format(const std::string& name) {
  if (name == "json") return CircuitFormat::Json;
  if (name == "qasm") return CircuitFormat::QasmLite;
  throw std::invalid_argument("circuit format must be 'json' or 'qasm'");
}

py::dict metrics_dict(const Metrics& m) {
  py::dict d;
  d["n_relocate"] = m.n_relocate;
  d["n_recnot"] = m.n_recnot;
  d["t_eff"] = m.t_eff;
  d["makespan_ns"] = m.makespan.count();
  d["relocate_concurrency"] = m.relocate_concurrency;
  d["delayed_teleport_fraction"] = m.delayed_teleport_fraction;
  d["mean_wait_ns"] = m.mean_wait.count();
  return d;
}

// Stream of schedule instructions as plain dicts.
py::list instruction_list(const Schedule& s) {
  py::list out;
  for (const auto& in : s.instructions) {
    py::dict d;
    d["op"] = std::string(to_string(in.kind));
    py::list qs;
    for (int k = 0; k < in.arity(); ++k) qs.append(in.qubits[static_cast<std::size_t>(k)]);
    d["qubits"] = qs;
    d["from"] = in.from_chip;
    d["to"] = in.to_chip;
    d["gate"] = in.gate;
    d["block"] = in.block;
    d["eviction"] = in.eviction;
    d["start_ns"] = in.start.count();
    d["duration_ns"] = in.duration.count();
    out.append(std::move(d));
  }
  return out;
}

py::dict compile_py(const std::string& circuit, const std::string& arch, const std::string& format,
                    const std::string& scheduler, const std::string& mapper, bool ees, int beam, int window,
                    double alpha, double beta, std::optional<double> epr_hide, std::uint64_t seed) {
  const auto dag = parse_circuit(circuit, circuit_format(format));
  auto topo = load_topology(arch);
  if (epr_hide) topo = topo.with_epr_hide(*epr_hide);
  CompileOptions opt;
  opt.scheduler = scheduler_from_string(scheduler);
  opt.mapper = mapper_from_string(mapper);
  opt.ees = ees;
  opt.params.beam = beam;
  opt.params.window = window;
  opt.params.alpha = alpha;
  opt.params.beta = beta;
  opt.seed = seed;
  CompileResult r;
  {
    py::gil_scoped_release release;
    r = compile(dag, topo, opt);
  }
  StatsContext ctx{scheduler, ees, opt.params, topo.timing().epr_hide, seed};
  py::dict d;
  d["metrics"] = metrics_dict(r.metrics);
  d["before_ees"] = metrics_dict(r.before_ees);
  d["fidelity"] = r.fidelity.total;
  d["blocks"] = r.blocks.size();
  d["instructions"] = instruction_list(r.schedule);
  d["schedule_json"] = schedule_to_json(r.schedule);
  d["stats_json"] = stats_to_json(r, ctx);
  return d;
}

}  // namespace

PYBIND11_MODULE(_athena, m) {
  m.doc() = "Teleportation-aware scheduling for distributed quantum computers";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationFailure>(m, "ValidationFailure", PyExc_RuntimeError);
  py::register_exception<OracleLimitError>(m, "OracleLimitError", PyExc_ValueError);

  m.def("compile", &compile_py, py::arg("circuit"), py::arg("arch"), py::arg("format") = "json",
        py::arg("scheduler") = "ums", py::arg("mapper") = "mincut", py::arg("ees") = true, py::arg("beam") = 16,
        py::arg("window") = 4, py::arg("alpha") = 1.77, py::arg("beta") = 0.871, py::arg("epr_hide") = py::none(),
        py::arg("seed") = 7,
        "Compile circuit text against an architecture description; returns metrics and the schedule.");

  m.def(
      "validate",
      [](const std::string& schedule, const std::string& circuit, const std::string& arch, const std::string& format) {
        const auto topo = load_topology(arch);
        const auto dag = parse_circuit(circuit, circuit_format(format));
        const auto v = validate(schedule_from_json(schedule, topo), dag, topo);
        if (!v) return py::object(py::none());
        py::dict d;
        d["kind"] = std::string(to_string(v->kind));
        d["instruction"] = v->instruction;
        d["time_ns"] = v->time.count();
        d["message"] = v->message;
        return py::object(std::move(d));
      },
      py::arg("schedule"), py::arg("circuit"), py::arg("arch"), py::arg("format") = "json",
      "None when the schedule is clean, else the first violation.");

  m.def(
      "oracle",
      [](const std::string& circuit, const std::string& arch, const std::string& format, const std::string& mapper,
         double alpha, std::uint64_t seed) {
        const auto dag = parse_circuit(circuit, circuit_format(format));
        const auto topo = load_topology(arch);
        const auto layout = map_program(dag, topo, mapper_from_string(mapper), seed);
        const auto r = optimal_teff(dag, layout, topo, alpha);
        py::dict d;
        d["t_eff"] = r.t_eff;
        d["relocations"] = r.relocations;
        d["recnots"] = r.recnots;
        d["states"] = r.states;
        return d;
      },
      py::arg("circuit"), py::arg("arch"), py::arg("format") = "json", py::arg("mapper") = "mincut",
      py::arg("alpha") = 1.77, py::arg("seed") = 7, "Exact minimum t_eff for a small instance.");

  m.def(
      "generate",
      [](const std::string& family, int qubits, std::uint64_t seed, int layers, const std::string& format) {
        const auto dag = generate_benchmark(family_from_string(family), qubits, seed, GeneratorOptions{layers});
        return emit_circuit(dag, circuit_format(format));
      },
      py::arg("family"), py::arg("qubits"), py::arg("seed") = 1, py::arg("layers") = 2, py::arg("format") = "json",
      "Benchmark circuit text.");

  m.def(
      "epr_success_prob",
      [](double p_succ, int attempts) {
        EprModel model;
        model.p_attempt = p_succ;
        return epr_success_prob(model, attempts);
      },
      py::arg("p_succ"), py::arg("attempts"));
  m.def("epr_generation_latency_us", [] { return to_micros(epr_generation_latency(EprModel{})); });
}

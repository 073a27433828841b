#include "commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "athena/io.hpp"
#include "athena/oracle.hpp"
#include "athena/pipeline.hpp"
#include "athena/timing.hpp"

namespace athena::cli {

namespace {

namespace fs = std::filesystem;

// Thrown for anything the user can fix by changing an input file.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_file(path, text);
}

GateDag load_circuit(const std::string& path) {
  const auto text = read_file(path);
  try {
    return parse_circuit(text, circuit_format_for_path(path));
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.line()) + ":" + std::to_string(e.column()) + ": " + e.what());
  }
}

Topology load_arch(const std::string& path) {
  try {
    return load_topology(read_file(path));
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Maps exceptions onto exit codes with a one-line diagnostic.
template <class F>
int guarded(const char* command, F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    std::cerr << "athena " << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const ValidationFailure& e) {
    std::cerr << "athena " << command << ": " << e.what() << "\n";
    return kExitSchedule;
  } catch (const DeadlockError& e) {
    std::cerr << "athena " << command << ": " << e.what() << "\n";
    return kExitSchedule;
  } catch (const OracleLimitError& e) {
    std::cerr << "athena " << command << ": " << e.what() << "\n";
    return kExitSchedule;
  } catch (const std::invalid_argument& e) {
    std::cerr << "athena " << command << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "athena " << command << ": internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int run_compile(const CompileArgs& args) {
  return guarded("compile", [&] {
    const auto dag = load_circuit(args.circuit);
    auto topo = load_arch(args.arch);
    if (args.epr_hide >= 0.0) topo = topo.with_epr_hide(args.epr_hide);

    CompileOptions opt;
    opt.mapper = mapper_from_string(args.mapper);
    opt.scheduler = scheduler_from_string(args.scheduler);
    opt.params.alpha = args.alpha;
    opt.params.beta = args.beta;
    opt.params.beam = args.beam;
    opt.params.window = args.window;
    opt.params.max_block = args.max_block;
    opt.ees = args.ees;
    opt.seed = args.seed;
    opt.keep_trace = args.trace;
    const auto result = compile(dag, topo, opt);

    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    write_file(dir / "schedule.json", schedule_to_json(result.schedule));
    const StatsContext ctx{args.scheduler, args.ees, opt.params, topo.timing().epr_hide, args.seed};
    write_file(dir / "stats.json", stats_to_json(result, ctx));
    write_file(dir / "gantt.csv", gantt_csv(result.schedule));
    if (args.dump_blocks) write_file(dir / "blocks.json", blocks_to_json(result.blocks));
    if (args.trace) write_file(dir / "ums.jsonl", trace_to_jsonl(result.trace));

    const auto& m = result.metrics;
    std::cout << std::fixed << std::setprecision(3) << "t_eff " << m.t_eff << " relocations " << m.n_relocate
              << " recnots " << m.n_recnot << " makespan_ms " << to_millis(m.makespan) << " blocks "
              << result.blocks.size() << "\n";
    return kExitOk;
  });
}

int run_bench(const BenchArgs& args) {
  return guarded("bench", [&] {
    Suite suite;
    try {
      suite = parse_suite(read_file(args.suite));
    } catch (const std::invalid_argument& e) {
      throw InputError(args.suite + ": " + e.what());
    }
    const auto rows = run_suite(suite, args.threads);
    emit(args.out, args.format == "csv" ? bench_csv(rows) : bench_markdown(suite, rows));
    return kExitOk;
  });
}

int run_validate(const ValidateArgs& args) {
  return guarded("validate", [&] {
    const auto dag = load_circuit(args.circuit);
    const auto topo = load_arch(args.arch);
    Schedule schedule;
    try {
      schedule = schedule_from_json(read_file(args.schedule), topo);
    } catch (const std::invalid_argument& e) {
      throw InputError(args.schedule + ": " + e.what());
    }
    if (const auto v = validate(schedule, dag, topo)) {
      std::cout << "violation " << to_string(v->kind) << " instruction " << v->instruction << " time_ns "
                << v->time.count() << ": " << v->message << "\n";
      return kExitSchedule;
    }
    std::cout << "ok " << schedule.instructions.size() << " instructions\n";
    return kExitOk;
  });
}

int run_oracle(const OracleArgs& args) {
  return guarded("oracle", [&] {
    const auto dag = load_circuit(args.circuit);
    const auto topo = load_arch(args.arch);
    const auto layout = map_program(dag, topo, mapper_from_string(args.mapper), args.seed);
    auto result = optimal_teff(dag, layout, topo, args.alpha);
    std::cout << std::fixed << std::setprecision(3) << "t_eff " << result.t_eff << " relocations "
              << result.relocations << " recnots " << result.recnots << " states " << result.states << "\n";
    if (!args.out.empty()) {
      insert_unaries(result.witness, dag);
      assign_durations(result.witness, topo);
      (void)simulate_latency(result.witness, topo, TimingMode::Asap);
      write_file(args.out, schedule_to_json(result.witness));
    }
    return kExitOk;
  });
}

int run_generate(const GenerateArgs& args) {
  return guarded("generate", [&] {
    const auto dag = generate_benchmark(family_from_string(args.family), args.qubits, args.seed,
                                        GeneratorOptions{args.layers});
    emit(args.out, emit_circuit(dag, args.format == "qasm" ? CircuitFormat::QasmLite : CircuitFormat::Json));
    return kExitOk;
  });
}

}  // namespace athena::cli

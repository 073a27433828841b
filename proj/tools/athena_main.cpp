#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  using namespace athena::cli;
  CLI::App app{"athena: teleportation-aware scheduler for distributed quantum computers"};
  app.require_subcommand(1);

  CompileArgs compile;
  auto* c = app.add_subcommand("compile", "Map, block, schedule and time a circuit");
  c->add_option("--circuit", compile.circuit, "Circuit file (.json or OpenQASM subset)")->required()->check(CLI::ExistingFile);
  c->add_option("--arch", compile.arch, "Architecture file (TOML or JSON)")->required()->check(CLI::ExistingFile);
  c->add_option("--mapper", compile.mapper, "Initial mapper")->check(CLI::IsMember({"mincut", "trivial"}));
  c->add_option("--scheduler", compile.scheduler, "Scheduler")->check(CLI::IsMember({"ums", "blockgreedy", "pergate"}));
  c->add_option("--beam", compile.beam, "Candidates kept per step")->check(CLI::PositiveNumber);
  c->add_option("--window", compile.window, "Lookahead blocks")->check(CLI::NonNegativeNumber);
  c->add_option("--max-block", compile.max_block, "Gate cap per block")->check(CLI::PositiveNumber);
  c->add_option("--alpha", compile.alpha, "Re-CNOT cost in relocations");
  c->add_option("--beta", compile.beta, "Lookahead decay per block");
  c->add_flag("--ees,!--no-ees", compile.ees, "Run the early-scheduling pass (default on)");
  c->add_option("--epr-hide", compile.epr_hide, "Fraction of EPR generation hidden, overrides the architecture")
      ->check(CLI::Range(0.0, 1.0));
  c->add_option("--seed", compile.seed, "Mapper seed");
  c->add_option("--out-dir", compile.out_dir, "Output directory");
  c->add_flag("--dump-blocks", compile.dump_blocks, "Also write blocks.json");
  c->add_flag("--trace", compile.trace, "Also write ums.jsonl with per-step candidate costs");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Compile a generated suite with several schedulers");
  b->add_option("--suite", bench.suite, "Suite file (TOML or JSON)")->required()->check(CLI::ExistingFile);
  b->add_option("--format", bench.format, "Table format")->check(CLI::IsMember({"markdown", "csv"}));
  b->add_option("--out", bench.out, "Output file, stdout when omitted");
  b->add_option("--threads", bench.threads, "Worker threads, 0 reads ATHENA_THREADS")->check(CLI::NonNegativeNumber);

  ValidateArgs validate;
  auto* v = app.add_subcommand("validate", "Check a schedule against its circuit and architecture");
  v->add_option("--schedule", validate.schedule, "schedule.json")->required()->check(CLI::ExistingFile);
  v->add_option("--circuit", validate.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
  v->add_option("--arch", validate.arch, "Architecture file")->required()->check(CLI::ExistingFile);

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Exact minimum teleportation cost for a small instance");
  o->add_option("--circuit", oracle.circuit, "Circuit file")->required()->check(CLI::ExistingFile);
  o->add_option("--arch", oracle.arch, "Architecture file")->required()->check(CLI::ExistingFile);
  o->add_option("--mapper", oracle.mapper, "Initial mapper")->check(CLI::IsMember({"mincut", "trivial"}));
  o->add_option("--alpha", oracle.alpha, "Re-CNOT cost in relocations");
  o->add_option("--seed", oracle.seed, "Mapper seed");
  o->add_option("--out", oracle.out, "Write the witness schedule here");

  GenerateArgs generate;
  auto* g = app.add_subcommand("generate", "Emit a generated benchmark circuit");
  g->add_option("--family", generate.family, "Benchmark family")
      ->required()
      ->check(CLI::IsMember({"qaoa-3reg", "qaoa-fc", "qft-like", "qv-like", "bv-like"}));
  g->add_option("--qubits", generate.qubits, "Program qubits")->check(CLI::Range(4, 100000));
  g->add_option("--seed", generate.seed, "Generator seed");
  g->add_option("--layers", generate.layers, "QAOA rounds")->check(CLI::PositiveNumber);
  g->add_option("--format", generate.format, "Circuit format")->check(CLI::IsMember({"json", "qasm"}));
  g->add_option("--out", generate.out, "Output file, stdout when omitted");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; malformed arguments are input errors.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*c) return run_compile(compile);
  if (*b) return run_bench(bench);
  if (*v) return run_validate(validate);
  if (*o) return run_oracle(oracle);
  return run_generate(generate);
}

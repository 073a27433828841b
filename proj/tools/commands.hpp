#pragma once

#include <cstdint>
#include <string>

namespace athena::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;     // unreadable or malformed input
inline constexpr int kExitSchedule = 3;  // validation failure, deadlock or oracle limit

struct CompileArgs {
  std::string circuit;
  std::string arch;
  std::string mapper = "mincut";
  std::string scheduler = "ums";
  int beam = 16;
  int window = 4;
  int max_block = 64;
  double alpha = 1.77;
  double beta = 0.871;
  bool ees = true;
  double epr_hide = -1.0;  // negative keeps the architecture's value
  std::uint64_t seed = 7;
  std::string out_dir = "out";
  bool dump_blocks = false;
  bool trace = false;
};

struct BenchArgs {
  std::string suite;
  std::string format = "markdown";
  std::string out;  // stdout when empty
  int threads = 0;
};

struct ValidateArgs {
  std::string schedule;
  std::string circuit;
  std::string arch;
};

struct OracleArgs {
  std::string circuit;
  std::string arch;
  std::string mapper = "trivial";
  double alpha = 1.77;
  std::uint64_t seed = 7;
  std::string out;  // witness schedule path, optional
};

struct GenerateArgs {
  std::string family;
  int qubits = 16;
  std::uint64_t seed = 1;
  int layers = 2;
  std::string format = "json";
  std::string out;  // stdout when empty
};

int run_compile(const CompileArgs& args);
int run_bench(const BenchArgs& args);
int run_validate(const ValidateArgs& args);
int run_oracle(const OracleArgs& args);
int run_generate(const GenerateArgs& args);

}  // namespace athena::cli

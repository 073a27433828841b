#pragma once

#include <span>
#include <string>
#include <string_view>

#include "athena/pipeline.hpp"

namespace athena {

inline constexpr int kSchemaVersion = 1;

// {"schema": 1, "qubits": n, "initial_layout": [{"qubit", "chip", "slot"}...],
//  "instructions": [{"op", "qubits", "from", "to", "gate", "block", "eviction",
//  "start_ns", "duration_ns"}...]}
[[nodiscard]] std::string schedule_to_json(const Schedule& schedule);
[[nodiscard]] Schedule schedule_from_json(std::string_view text, const Topology& topo);

struct StatsContext {
  std::string scheduler;
  bool ees = false;
  CostParams params;
  double epr_hide = 1.0;
  std::uint64_t seed = 0;
};
[[nodiscard]] std::string stats_to_json(const CompileResult& result, const StatsContext& ctx);

// One row per instruction: index,op,qubits,from,to,gate,block,eviction,start_ns,end_ns
[[nodiscard]] std::string gantt_csv(const Schedule& schedule);
[[nodiscard]] std::string blocks_to_json(std::span<const Block> blocks);
// One JSON object per line.
[[nodiscard]] std::string trace_to_jsonl(std::span<const LayerTrace> trace);
[[nodiscard]] std::string layout_to_json(const Layout& layout);

}  // namespace athena

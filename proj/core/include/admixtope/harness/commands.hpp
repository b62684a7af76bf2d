#pragma once

#include <cstdint>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "admixtope/harness/config.hpp"

namespace admixtope::harness {

/// Process exit codes of the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitBoundFailure = 2;
inline constexpr int kExitRuntime = 3;

struct RunContext {
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "out";
  int threads = 1;
  bool debug_recount = false;
};

struct CommandResult {
  int exit_code = kExitOk;
  /// Deterministic summary; also stored as the run record's rows.
  nlohmann::json summary = nlohmann::json::object();
};

/// Writes datasets/dataset_m{m}_n{n}_r{rep}.json and manifest.csv.
CommandResult cmd_simulate(const ExperimentConfig& config, const RunContext& ctx);
/// Writes chain.jsonl and posterior_summary.json.
CommandResult cmd_posterior(const ExperimentConfig& config, const RunContext& ctx);
/// Writes bounds.jsonl and bounds_summary.csv; exit 2 iff a literal bound fails.
CommandResult cmd_verify(const ExperimentConfig& config, const RunContext& ctx);
/// Writes sweep.csv, sweep_failures.csv and sweep_summary.json.
CommandResult cmd_sweep(const ExperimentConfig& config, const RunContext& ctx);
/// Writes minimax.csv and minimax_summary.json.
CommandResult cmd_minimax(const ExperimentConfig& config, const RunContext& ctx);

/// Dispatches on config.experiment and writes run_record.json.
CommandResult run_command(const ExperimentConfig& config, const RunContext& ctx);

/// Seed of one grid cell replicate: derive_seed(base, {m, n, rep}).
std::uint64_t cell_seed(std::uint64_t base, int m, int n, int rep);

}  // namespace admixtope::harness

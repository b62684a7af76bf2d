#include <utility>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "admixtope/harness/commands.hpp"
#include "admixtope/harness/json_io.hpp"

namespace ah = admixtope::harness;

int main(int argc, char** argv) {
  CLI::App app{"admixture polytope estimation harness"};
  app.require_subcommand(1, 1);

  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  int threads = 1;
  bool debug_recount = false;
  if (const char* env = std::getenv("OUT_DIR")) out_dir = env;
  if (const char* env = std::getenv("THREADS")) {
    try {
      threads = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: THREADS must be an integer\n";
      return ah::kExitUsage;
    }
  }

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "draw datasets from a model over an (m, n) grid"},
      {"posterior", "run collapsed Gibbs chains on one dataset"},
      {"verify", "check bound suites and report pass rates"},
      {"sweep", "posterior contraction over an (m, n) grid"},
      {"minimax", "cap-chopped polytope pairs and their divergences"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "base seed")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    sub->add_flag("--debug-recount", debug_recount, "recount Gibbs tables after every sweep");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? ah::kExitOk : ah::kExitUsage;
  }
  if (threads < 1) {
    std::cerr << "error: thread count must be positive\n";
    return ah::kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  ah::ExperimentConfig config;
  try {
    nlohmann::json doc = ah::read_json(config_path);
    if (!doc.is_object()) throw ah::ConfigError("config must be a JSON object");
    if (!doc.contains("experiment")) doc["experiment"] = command;
    if (doc["experiment"] != command)
      throw ah::ConfigError("config experiment '" + doc["experiment"].dump() + "' does not match command " + command);
    config = ah::parse_config(doc);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return ah::kExitUsage;
  }

  try {
    const ah::RunContext ctx{seed, out_dir, threads, debug_recount};
    const ah::CommandResult result = ah::run_command(config, ctx);
    if (result.exit_code == ah::kExitBoundFailure) std::cerr << "bound suite failure: a literal bound was violated\n";
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << '\n';
    return ah::kExitRuntime;
  }
}

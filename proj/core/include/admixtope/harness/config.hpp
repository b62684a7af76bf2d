#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "admixtope/admixture.hpp"
#include "admixtope/bounds.hpp"
#include "admixtope/error.hpp"
#include "admixtope/posterior.hpp"
#include "admixtope/prior.hpp"
#include "admixtope/rates.hpp"

namespace admixtope::harness {

/// Raised for any configuration that fails schema validation.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

enum class Experiment { Simulate, Posterior, Verify, Sweep, Minimax };

const char* to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct GridCell {
  int m = 1;
  int n = 1;
};

/// One bound suite of the verify experiment.
struct SuiteConfig {
  BoundId id = BoundId::LemM_a;
  std::size_t instances = 1;
  int n = 0;
  double eps = 0.0;
  std::size_t reps = 0;
  std::vector<double> deltas;
  std::optional<double> tolerance;  ///< overrides the exponent tolerance
};

struct MinimaxConfig {
  int k = 4;
  int d = 2;
  std::vector<double> eps;
  std::vector<int> ns{2, 4, 8};
  std::size_t mc_samples = 200'000;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Simulate;
  std::optional<AdmixtureModel> model;
  std::optional<PriorSpec> prior;
  std::vector<GridCell> grid;
  int replicates = 1;
  PosteriorOptions mcmc;
  std::vector<double> C{0.5, 1.0, 2.0, 4.0};
  double alpha = 0.0;
  RateVariant variant = RateVariant::Overfitted;
  std::vector<SuiteConfig> suites;
  std::size_t mc_samples = 20'000;
  MinimaxConfig minimax;
  std::optional<std::filesystem::path> dataset_path;
  /// The validated document, used for hashing and the run record.
  nlohmann::json document;
};

/// Validates against docs/config.schema.json (mirrored here) and every module
/// limit, then builds the typed config. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// FNV-1a 64 of the canonical serialization (keys sorted, compact), as hex.
std::string config_hash(const nlohmann::json& doc);

}  // namespace admixtope::harness

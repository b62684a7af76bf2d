#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "admixtope/admixture.hpp"
#include "admixtope/bounds.hpp"
#include "admixtope/polytope.hpp"
#include "admixtope/posterior.hpp"

namespace admixtope::harness {

nlohmann::json to_json(const Polytope& g);
Polytope polytope_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AdmixtureModel& m);
AdmixtureModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Dataset& x, std::optional<std::uint64_t> seed = std::nullopt,
                       const AdmixtureModel* model = nullptr);
Dataset dataset_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BoundReport& r);
nlohmann::json to_json(const PosteriorSample& s);
nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);

/// Decimal with 17 significant digits (round-trip exact).
std::string format_real(double x);

/// Truncates and writes, creating parent directories. Throws Error when the
/// path is not writable.
void write_text(const std::filesystem::path& path, const std::string& text);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace admixtope::harness

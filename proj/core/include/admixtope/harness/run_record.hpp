#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace admixtope::harness {

/// Provenance of one command run. Timestamps live only here; the data files a
/// command writes are deterministic.
struct RunRecord {
  std::string command;
  std::string config_hash;
  std::string revision;
  std::uint64_t base_seed = 0;
  int threads = 1;
  std::string started;  ///< ISO-8601 UTC
  std::string finished;
  nlohmann::json rows = nlohmann::json::array();

  nlohmann::json to_json() const;
};

std::string utc_now();
/// Source revision the library was built from.
std::string source_revision();
void write_run_record(const std::filesystem::path& out_dir, const RunRecord& record);

}  // namespace admixtope::harness

#include "admixtope/harness/run_record.hpp"

#include <chrono>
#include <ctime>

#include "admixtope/harness/json_io.hpp"

#ifndef ADMIXTOPE_REVISION
#define ADMIXTOPE_REVISION "unknown"
#endif

namespace admixtope::harness {

nlohmann::json RunRecord::to_json() const {
  return {{"command", command},   {"config_hash", config_hash}, {"revision", revision}, {"base_seed", base_seed},
          {"threads", threads},   {"started", started},         {"finished", finished}, {"rows", rows}};
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string source_revision() { return ADMIXTOPE_REVISION; }

void write_run_record(const std::filesystem::path& out_dir, const RunRecord& record) {
  write_text(out_dir / "run_record.json", record.to_json().dump(2) + "\n");
}

}  // namespace admixtope::harness

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sigwf/walkforward.hpp"

namespace sigwf {

using json = nlohmann::ordered_json;

/// Record files are JSON Lines: a `{"record":"header", ...}` first line
/// carrying the run digest, then one object per line.
json record_header(const std::string& digest);

json epoch_to_json(const EpochRecord& e);
EpochRecord epoch_from_json(const json& j);

json performance_to_json(const PerformanceReport& rep);
json duration_stats_to_json(const DurationStats& stats);
json frequencies_to_json(const SelectionFrequencies& freq);

/// Append-friendly writer used for incremental epoch persistence.
class RecordWriter {
 public:
  RecordWriter(const std::filesystem::path& path, const std::string& digest, bool append);
  void write(const json& record);
  void flush();

 private:
  std::filesystem::path path_;
};

/// Reads a record file; verifies the header digest when `expect_digest` is
/// non-empty (DataError on mismatch).
std::vector<json> read_records(const std::filesystem::path& path,
                               const std::string& expect_digest = "");

}  // namespace sigwf

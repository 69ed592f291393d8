#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vfbns/experiments.hpp"

namespace vfbns {

struct ManifestEntry {
  std::string path;  // relative to the output root
  std::uintmax_t bytes = 0;
};

struct Manifest {
  std::filesystem::path root;
  std::vector<ManifestEntry> entries;
};

/// Thrown for any file-system failure; what() names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header plus one row per record, 17 significant digits.
std::string records_csv(const std::vector<DiagnosticsRecord>& records);
/// t and the monitored groups that are not part of run.csv.
std::string monitors_csv(const std::vector<DiagnosticsRecord>& records);

nlohmann::json to_json(const RunReport& report);
nlohmann::json to_json(const SweepReport& report);

/// Writes run.csv, monitors.csv, summary.json and config.cfg into dir, then
/// manifest.txt listing them. Throws IoError if a file exists and overwrite is off.
Manifest write_outputs(const RunReport& report, const std::filesystem::path& dir, bool overwrite);

/// dir/{experiment}/{axis value}/... per member plus dir/{experiment}/summary.json
/// and dir/{experiment}/manifest.txt.
Manifest write_outputs(const SweepReport& report, const std::filesystem::path& dir, bool overwrite);

/// Reads a run.csv back (header checked against the fixed column order).
std::vector<DiagnosticsRecord> read_records_csv(const std::filesystem::path& path);

}  // namespace vfbns

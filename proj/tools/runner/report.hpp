#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "config.hpp"

namespace sdl::runner {

inline constexpr int kSchemaVersion = 1;

using Cell = std::variant<double, long long, std::string>;

struct Report {
  std::string experiment;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  nlohmann::json results = nlohmann::json::object();
  nlohmann::json residuals = nlohmann::json::object();
  bool passed = true;
  std::vector<std::string> failures;

  /// Records a threshold check; a miss clears `passed`.
  void check(bool ok, const std::string& what);
};

/// Header line then one line per row; doubles with 17 significant digits; LF.
std::string to_csv(const Report& r);

/// {"experiment", "schema_version", "config", "results", "residuals", "passed"}.
nlohmann::json to_json(const Report& r, const Config& cfg);

/// UTC time as YYYYMMDDTHHMMSSZ.
std::string utc_timestamp();

struct WrittenFiles {
  std::filesystem::path csv;
  std::filesystem::path json;
};

/// Writes <output.dir>/<experiment>-<timestamp>.{csv,json}.
WrittenFiles write_report(const Report& r, const Config& cfg, const std::string& timestamp);

}  // namespace sdl::runner

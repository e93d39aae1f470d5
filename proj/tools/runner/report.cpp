#include "report.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "sdl/errors.hpp"

namespace sdl::runner {

void Report::check(bool ok, const std::string& what) {
  if (ok) return;
  passed = false;
  failures.push_back(what);
}

namespace {

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const std::string& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

nlohmann::json typed_value(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return v;
  return s;
}

}  // namespace

std::string to_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.header.size(); ++i) out += (i ? "," : "") + r.header[i];
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const Report& r, const Config& cfg) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [k, v] : cfg.values()) config[k] = typed_value(v);
  nlohmann::json results = r.results;
  results["failures"] = r.failures;
  return {{"experiment", r.experiment},     {"schema_version", kSchemaVersion},
          {"config", config},               {"results", results},
          {"residuals", r.residuals},       {"passed", r.passed}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

WrittenFiles write_report(const Report& r, const Config& cfg, const std::string& timestamp) {
  namespace fs = std::filesystem;
  const fs::path dir = cfg.str("output.dir");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ConfigurationError("cannot create output.dir '" + dir.string() + "': " + ec.message());
  // Runs within the same second get a numeric suffix instead of overwriting.
  std::string stem = r.experiment + "-" + timestamp;
  for (int k = 2; fs::exists(dir / (stem + ".json")) || fs::exists(dir / (stem + ".csv")); ++k)
    stem = r.experiment + "-" + timestamp + "-" + std::to_string(k);
  WrittenFiles files{dir / (stem + ".csv"), dir / (stem + ".json")};
  std::ofstream csv(files.csv, std::ios::binary);
  csv << to_csv(r);
  std::ofstream js(files.json, std::ios::binary);
  js << to_json(r, cfg).dump(2) << '\n';
  if (!csv || !js) throw ConfigurationError("failed writing reports under '" + dir.string() + "'");
  return files;
}

}  // namespace sdl::runner

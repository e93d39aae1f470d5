#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sdl/errors.hpp"

namespace sdl::runner {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = first + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ConfigurationError("config key '" + key + "': '" + text + "' is not a number");
  return v;
}

}  // namespace

Config Config::defaults() {
  Config c;
  c.values_ = {
      {"profile.kind", "power"},
      {"profile.alpha", "1"},
      {"weight.family", "two_quadrant"},
      {"weight.cones", "2"},
      {"weight.cutoff", "1"},
      {"mesh.rings", "32"},
      {"mesh.sectors", "32"},
      {"mesh.r_min", "0.001"},
      {"mesh.R", "2"},
      {"mesh.grading", "1.35"},
      {"topology.mode", "split"},
      {"solver.tol", "1e-12"},
      {"solver.max_iter", "20000"},
      {"alpha", "1"},
      {"alphas", "0.5,1,4"},
      {"samples", "20"},
      {"mc.paths", "10000"},
      {"mc.seed", "20240601"},
      {"mc.max_steps", "1000000"},
      {"mc.start_radius", "0.05"},
      {"mc.start_angle", "0.7853981633974483"},
      {"mc.annulus_lo", "0.002"},
      {"mc.annulus_hi", "0.01"},
      {"mc.return_paths", "100"},
      {"mc.return_steps", "20000"},
      {"ladder.r_min", "0.01,0.001,0.0001,0.00001"},
      {"cones.delta", "0.39269908169872414"},
      {"cones.eps", "0.2,0.1,0.05,0.025"},
      {"bessel.alpha", "1"},
      {"bessel.r0", "0.5"},
      {"bessel.a", "0.01"},
      {"bessel.b", "1"},
      {"bessel.dt", "0.00001"},
      {"bessel.paths", "100000"},
      {"bessel.bridge", "true"},
      {"bessel.reflect", "false"},
      {"check.bound", "10"},
      {"check.quadrature_points", "64"},
      {"check.epsilons", "0.1,0.01,0.001,0.0001,0.00001,0.000001"},
      {"output.dir", "reports"},
  };
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigurationError("unknown config key '" + key + "'");
  it->second = value;
}

void Config::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigurationError("override '" + assignment + "' is not of the form key=value");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigurationError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (!has(key))
      throw ConfigurationError(path + ":" + std::to_string(lineno) + ": unknown config key '" + key + "'");
    values_[key] = trim(line.substr(eq + 1));
  }
}

const std::string& Config::str(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigurationError("unknown config key '" + key + "'");
  return it->second;
}

double Config::num(const std::string& key) const { return parse_double(key, str(key)); }

double Config::positive(const std::string& key) const {
  const double v = num(key);
  if (!(v > 0.0)) throw ConfigurationError("config key '" + key + "' must be positive");
  return v;
}

int Config::integer(const std::string& key) const {
  const double v = positive(key);
  if (v != static_cast<double>(static_cast<long long>(v)) || v > 2147483647.0)
    throw ConfigurationError("config key '" + key + "' must be a positive integer");
  return static_cast<int>(v);
}

bool Config::flag(const std::string& key) const {
  std::string v = str(key);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigurationError("config key '" + key + "' must be true or false");
}

std::vector<double> Config::list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(str(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = parse_double(key, trim(item));
    if (!(v > 0.0)) throw ConfigurationError("config key '" + key + "': entries must be positive");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigurationError("config key '" + key + "' is empty");
  return out;
}

RadialProfile Config::profile() const {
  std::string kind = str("profile.kind");
  std::transform(kind.begin(), kind.end(), kind.begin(), [](unsigned char c) { return std::tolower(c); });
  if (kind == "power") return RadialProfile::power(positive("profile.alpha"));
  if (kind == "log") return RadialProfile::log(positive("profile.alpha"));
  if (kind == "unit") return RadialProfile::unit();
  throw ConfigurationError("profile.kind must be power, log or unit (got '" + kind + "')");
}

WeightSpec Config::weight() const {
  std::string fam = str("weight.family");
  std::transform(fam.begin(), fam.end(), fam.begin(), [](unsigned char c) { return std::tolower(c); });
  const double cutoff = positive("weight.cutoff");
  if (fam == "two_quadrant" || fam == "twoquadrant") return WeightSpec::two_quadrant(profile(), cutoff);
  if (fam == "multi_cone" || fam == "multicone")
    return WeightSpec::multi_cone(integer("weight.cones"), profile(), cutoff);
  if (fam == "unit_control" || fam == "unitcontrol") return WeightSpec::unit_control(cutoff);
  throw ConfigurationError("weight.family must be two_quadrant, multi_cone or unit_control (got '" + fam + "')");
}

MeshParams Config::mesh() const {
  MeshParams p;
  p.rings = integer("mesh.rings");
  p.sectors = integer("mesh.sectors");
  p.r_min = positive("mesh.r_min");
  p.outer_radius = positive("mesh.R");
  p.grading = positive("mesh.grading");
  return p;
}

OriginMode Config::mode() const { return origin_mode_from_string(str("topology.mode")); }

SolverOptions Config::solver() const {
  SolverOptions o;
  o.tol = positive("solver.tol");
  o.max_iter = integer("solver.max_iter");
  return o;
}

}  // namespace sdl::runner

#pragma once

// Flat `key = value` experiment configuration with dotted keys. Every key has
// a default; files and --set overrides may only touch known keys.

#include <map>
#include <string>
#include <vector>

#include "sdl/linalg.hpp"
#include "sdl/polar_mesh.hpp"
#include "sdl/weights.hpp"

namespace sdl::runner {

class Config {
 public:
  /// All known keys with their default values.
  static Config defaults();

  /// Reads `key = value` lines; '#' starts a comment. Throws
  /// ConfigurationError naming the file and line on unknown keys or bad lines.
  void load_file(const std::string& path);
  /// "key=value".
  void apply_override(const std::string& assignment);
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& str(const std::string& key) const;
  double num(const std::string& key) const;
  /// Strictly positive number.
  double positive(const std::string& key) const;
  int integer(const std::string& key) const;
  bool flag(const std::string& key) const;
  /// Comma-separated positive numbers.
  std::vector<double> list(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

  RadialProfile profile() const;
  WeightSpec weight() const;
  MeshParams mesh() const;
  OriginMode mode() const;
  SolverOptions solver() const;

 private:
  std::map<std::string, std::string> values_;
};

}  // namespace sdl::runner

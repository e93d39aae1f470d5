#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "report.hpp"

namespace sdl::runner {

/// check-assumptions, capacity, cones, one-point, two-point, hitting-mc,
/// approach-angle, bessel, trace, dist.
const std::vector<std::string>& experiment_names();

/// Runs one experiment. Threshold misses are recorded in the report;
/// configuration and numerical problems throw sdl::Error.
Report run_experiment(const std::string& name, const Config& cfg);

}  // namespace sdl::runner

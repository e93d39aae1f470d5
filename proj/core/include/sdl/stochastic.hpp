#pragma once

// Monte Carlo on the assembled network (the conductance-proportional jump
// chain) and Euler-Maruyama for the radial Bessel comparison diffusions.

#include <cstdint>
#include <vector>

#include "sdl/forms.hpp"

namespace sdl {

inline constexpr int kTimeout = -1;

struct HitRecord {
  int absorbed_at = kTimeout;  // origin node id, or kTimeout
  /// Angle in [-pi, pi) of the last annulus node before the final exit from
  /// the annulus; NaN if the walk never left the annulus.
  double last_annulus_angle = 0.0;
  std::int64_t steps = 0;

  bool timed_out() const { return absorbed_at == kTimeout; }
};

struct WalkConfig {
  int start = 0;
  std::int64_t max_steps = 1'000'000;
  double r_lo = 0.0;  // annulus r_lo <= r <= r_hi
  double r_hi = 0.0;
  std::uint64_t seed = 1;
  int paths = 1000;
  int threads = 0;  // 0 = worker_count()
};

/// One record per path; path p draws from stream_seed(seed, p) only.
std::vector<HitRecord> walk_sample(const FormMatrices& f, const WalkConfig& cfg);

struct ReturnSideStats {
  std::int64_t visits_plus = 0;   // visits to origin node 0 (0+, or the glued origin)
  std::int64_t visits_minus = 0;  // visits to origin node 1 (split only)
  /// Next-node quadrant counts after a visit, index 0..3 for Q1..Q4.
  std::int64_t plus_next[4] = {0, 0, 0, 0};
  std::int64_t minus_next[4] = {0, 0, 0, 0};
  double from_plus_into_Q1 = 0.0;
  double from_minus_into_Q3 = 0.0;  // NaN without a second origin node
};

/// Non-absorbing walks of cfg.max_steps steps each. Throws
/// InsufficientDataError when an origin node is never visited.
ReturnSideStats return_side_stats(const FormMatrices& f, const WalkConfig& cfg);

struct BesselConfig {
  double delta = 1.0;  // generator d^2/dr^2 + ((delta - 1)/r) d/dr
  double r0 = 0.5;
  double a = 0.01;
  double b = 1.0;
  double dt = 1e-5;
  int paths = 100000;
  std::uint64_t seed = 1;
  bool reflect_at_b = false;
  /// Kill a step with the Brownian-bridge probability of having crossed a
  /// boundary between grid times.
  bool bridge_correction = true;
  int threads = 0;
  double max_time = 1e3;  // paths still alive are counted as not hitting a
};

struct BesselEstimate {
  double estimate = 0.0;  // fraction of paths hitting a before b
  double std_err = 0.0;
  double analytic = 0.0;  // scale-function value, NaN with reflection at b
  std::int64_t aborted = 0;   // paths whose step underflowed below dt_min
  std::int64_t unfinished = 0;
};

/// Scale exponent kappa = 2 - delta; P(hit a before b) =
/// (r0^k - b^k)/(a^k - b^k), or log ratios when kappa = 0.
double bessel_analytic(double delta, double r0, double a, double b);

BesselEstimate bessel_hit_estimate(const BesselConfig& cfg);

}  // namespace sdl

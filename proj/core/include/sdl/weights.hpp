#pragma once

// Singular planar weights rho(x) built from a radial profile a(r), together
// with the exact radial integrals that the discretization is assembled from.
//
// Cones are numbered as C_i = [pi (i-1)/N, pi i/N), i = 1..2N, with the angle
// taken in [0, 2 pi). Inside the cutoff disk, odd cones carry a(r)^{-1} and
// even cones carry a(r); outside the disk the weight is 1. The two-quadrant
// weight is the N = 2 case (C_1 = Q1, ..., C_4 = Q4).

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace sdl {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ProfileKind { Power, Log, Unit };

struct RadialProfile {
  ProfileKind kind = ProfileKind::Power;
  double alpha = 1.0;  // exponent; unused for Unit

  static RadialProfile power(double alpha);
  static RadialProfile log(double alpha);
  static RadialProfile unit();

  /// Throws ConfigurationError unless 0 < alpha < 2 (Power) or alpha > 1 (Log).
  void validate() const;
};

enum class WeightFamily { TwoQuadrant, MultiCone, UnitControl };

struct WeightSpec {
  WeightFamily family = WeightFamily::TwoQuadrant;
  int cone_pairs = 2;  // N; the plane is split into 2N cones of angle pi/N
  RadialProfile profile{};
  double cutoff_radius = 1.0;

  static WeightSpec two_quadrant(RadialProfile profile, double cutoff = 1.0);
  static WeightSpec multi_cone(int n, RadialProfile profile, double cutoff = 1.0);
  static WeightSpec unit_control(double cutoff = 1.0);

  int cone_count() const { return 2 * cone_pairs; }
  double cone_angle() const { return kPi / cone_pairs; }

  /// True when rho is bounded above and below (no singular origin).
  bool is_regular() const;

  void validate() const;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

std::string to_string(ProfileKind kind);
std::string to_string(WeightFamily family);

/// a(r). Power/Log require 0 < r <= 1; Unit accepts any r > 0.
double profile_value(const RadialProfile& p, double r);

/// 1-based cone index of an angle (any real; reduced to [0, 2 pi)).
int cone_of_angle(const WeightSpec& w, double theta);

/// Exponent s with rho = a^s on the given cone inside the cutoff disk:
/// -1 on odd cones, +1 on even cones, 0 for regular weights.
int cone_exponent(const WeightSpec& w, int cone);

double weight_value(const WeightSpec& w, Vec2 x);

/// grad(rho)/rho for Power profiles; zero outside the cutoff disk.
Vec2 drift_value(const WeightSpec& w, Vec2 x);

inline constexpr double kDefaultOnerankBound = 10.0;

struct AssumptionReport {
  double integral_a_over_r = 0.0;
  double integral_r_over_a = 0.0;
  double onerank_sup = 0.0;
  std::vector<double> epsilons;
  std::vector<double> onerank_values;
  double bound = kDefaultOnerankBound;
  bool passed = false;
};

/// Geometric ladder 1e-1, 1e-2, ..., 1e-6.
std::vector<double> default_epsilon_ladder();

AssumptionReport check_assumptions(const RadialProfile& p, int quadrature_points,
                                   std::span<const double> epsilons,
                                   double bound = kDefaultOnerankBound);

/// Integral over [r_lo, r_hi] of dr / (rho(r, cone) r dtheta); +inf when it
/// diverges (zero conductance). Intervals may extend past the cutoff radius,
/// where rho = 1.
double radial_resistance(const WeightSpec& w, int cone, double r_lo, double r_hi, double dtheta);

/// Integral over [r_lo, r_hi] of rho(r, cone) / r dr (angular face conductance
/// times dtheta).
double angular_moment(const WeightSpec& w, int cone, double r_lo, double r_hi);

/// Integral over [r_lo, r_hi] of rho(r, cone) r dr (cell mass per radian).
double mass_moment(const WeightSpec& w, int cone, double r_lo, double r_hi);

/// Integral over [r_lo, r_hi] of a(r)^power / r dr for the bare profile,
/// power in {-1, 0, 1}; +inf when divergent.
double profile_log_moment(const RadialProfile& p, int power, double r_lo, double r_hi);

}  // namespace sdl

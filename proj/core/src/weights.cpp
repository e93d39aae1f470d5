#include "sdl/weights.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quadrature.hpp"
#include "sdl/errors.hpp"

namespace sdl {

namespace {

double reduce_angle(double theta) {
  double t = std::fmod(theta, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  if (t >= 2.0 * kPi) t = 0.0;
  return t;
}

// ∫ a^power / r dr over [lo, hi] for a Power profile, written with expm1 so
// that adjacent intervals add up without cancellation.
double power_log_moment(double alpha, int power, double lo, double hi) {
  const double e = power * alpha;
  if (power == 0) return lo == 0.0 ? kInf : std::log(hi / lo);
  if (lo == 0.0) return e > 0.0 ? std::pow(hi, e) / e : kInf;
  return std::pow(lo, e) * std::expm1(e * std::log(hi / lo)) / e;
}

// Same for a(r) = log(2/r)^{-alpha}: substitute t = log(2/r), dr/r = -dt.
double log_log_moment(double alpha, int power, double lo, double hi) {
  if (power == 0) return lo == 0.0 ? kInf : std::log(hi / lo);
  const double t_hi = std::log(2.0 / hi);
  const double f = 1.0 - power * alpha;  // antiderivative t^f / f
  if (lo == 0.0) {
    if (f < 0.0) return -std::pow(t_hi, f) / f;
    return kInf;
  }
  const double t_lo = std::log(2.0 / lo);
  if (f == 0.0) return std::log(t_lo / t_hi);
  return std::pow(t_hi, f) * std::expm1(f * std::log(t_lo / t_hi)) / f;
}

double power_mass_moment(double alpha, int power, double lo, double hi) {
  const double e = power * alpha + 2.0;
  return (std::pow(hi, e) - std::pow(lo, e)) / e;
}

void check_interval(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    std::ostringstream os;
    os << "radial interval [" << lo << ", " << hi << "] must satisfy 0 <= r_lo < r_hi";
    throw DomainError(os.str());
  }
}

// Splits [lo, hi] at the cutoff; the singular part uses the profile, the
// outer part has rho = 1.
template <typename Inner, typename Outer>
double split_at_cutoff(const WeightSpec& w, double lo, double hi, Inner inner, Outer outer) {
  const double c = w.cutoff_radius;
  double total = 0.0;
  if (lo < c) total += inner(lo, std::min(hi, c));
  if (hi > c) total += outer(std::max(lo, c), hi);
  return total;
}

}  // namespace

RadialProfile RadialProfile::power(double alpha) {
  RadialProfile p{ProfileKind::Power, alpha};
  p.validate();
  return p;
}

RadialProfile RadialProfile::log(double alpha) {
  RadialProfile p{ProfileKind::Log, alpha};
  p.validate();
  return p;
}

RadialProfile RadialProfile::unit() { return RadialProfile{ProfileKind::Unit, 0.0}; }

void RadialProfile::validate() const {
  switch (kind) {
    case ProfileKind::Power:
      if (!(alpha > 0.0 && alpha < 2.0))
        throw ConfigurationError("Power profile needs 0 < alpha < 2, got " + std::to_string(alpha));
      break;
    case ProfileKind::Log:
      if (!(alpha > 1.0))
        throw ConfigurationError("Log profile needs alpha > 1, got " + std::to_string(alpha));
      break;
    case ProfileKind::Unit:
      break;
  }
}

WeightSpec WeightSpec::two_quadrant(RadialProfile profile, double cutoff) {
  WeightSpec w{WeightFamily::TwoQuadrant, 2, profile, cutoff};
  w.validate();
  return w;
}

WeightSpec WeightSpec::multi_cone(int n, RadialProfile profile, double cutoff) {
  WeightSpec w{WeightFamily::MultiCone, n, profile, cutoff};
  w.validate();
  return w;
}

WeightSpec WeightSpec::unit_control(double cutoff) {
  WeightSpec w{WeightFamily::UnitControl, 2, RadialProfile::unit(), cutoff};
  w.validate();
  return w;
}

bool WeightSpec::is_regular() const {
  return family == WeightFamily::UnitControl || profile.kind == ProfileKind::Unit;
}

void WeightSpec::validate() const {
  profile.validate();
  if (family == WeightFamily::TwoQuadrant && cone_pairs != 2)
    throw ConfigurationError("TwoQuadrant weight has exactly 2 cone pairs");
  if (family == WeightFamily::MultiCone && cone_pairs < 2)
    throw ConfigurationError("MultiCone weight needs N >= 2");
  if (!(cutoff_radius > 0.0)) throw ConfigurationError("cutoff_radius must be positive");
  if (!is_regular() && cutoff_radius > 1.0)
    throw ConfigurationError("singular profiles are defined on (0, 1]; cutoff_radius must be <= 1");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::Power: return "Power";
    case ProfileKind::Log: return "Log";
    case ProfileKind::Unit: return "Unit";
  }
  return "?";
}

std::string to_string(WeightFamily family) {
  switch (family) {
    case WeightFamily::TwoQuadrant: return "TwoQuadrant";
    case WeightFamily::MultiCone: return "MultiCone";
    case WeightFamily::UnitControl: return "UnitControl";
  }
  return "?";
}

double profile_value(const RadialProfile& p, double r) {
  if (!(r > 0.0)) throw DomainError("profile_value: r must be positive");
  switch (p.kind) {
    case ProfileKind::Power:
      if (r > 1.0) throw DomainError("profile_value: Power profile defined on (0, 1]");
      return std::pow(r, p.alpha);
    case ProfileKind::Log:
      if (r > 1.0) throw DomainError("profile_value: Log profile defined on (0, 1]");
      return std::pow(std::log(2.0 / r), -p.alpha);
    case ProfileKind::Unit:
      return 1.0;
  }
  return 1.0;
}

int cone_of_angle(const WeightSpec& w, double theta) {
  const double t = reduce_angle(theta);
  const int i = static_cast<int>(std::floor(t / w.cone_angle()));
  return std::clamp(i, 0, w.cone_count() - 1) + 1;
}

int cone_exponent(const WeightSpec& w, int cone) {
  if (w.is_regular()) return 0;
  return (cone % 2 == 1) ? -1 : 1;
}

double weight_value(const WeightSpec& w, Vec2 x) {
  const double r = std::hypot(x.x, x.y);
  if (r == 0.0) throw DomainError("weight_value: the weight is not defined at the origin");
  if (w.is_regular() || r > w.cutoff_radius) return 1.0;
  const int s = cone_exponent(w, cone_of_angle(w, std::atan2(x.y, x.x)));
  const double a = profile_value(w.profile, r);
  return s < 0 ? 1.0 / a : a;
}

Vec2 drift_value(const WeightSpec& w, Vec2 x) {
  const double r2 = x.x * x.x + x.y * x.y;
  if (r2 == 0.0) throw DomainError("drift_value: undefined at the origin");
  if (w.is_regular() || std::sqrt(r2) > w.cutoff_radius) return {0.0, 0.0};
  if (w.profile.kind != ProfileKind::Power)
    throw UnsupportedPointError("drift_value: closed form only for Power profiles");
  const double theta = reduce_angle(std::atan2(x.y, x.x));
  const double rel = theta / w.cone_angle();
  if (std::abs(rel - std::round(rel)) < 1e-12)
    throw UnsupportedPointError("drift_value: point lies on a cone boundary");
  const int s = cone_exponent(w, cone_of_angle(w, theta));
  // grad log(r^{s alpha}) = s alpha x / |x|^2
  const double k = s * w.profile.alpha / r2;
  return {k * x.x, k * x.y};
}

std::vector<double> default_epsilon_ladder() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

double profile_log_moment(const RadialProfile& p, int power, double r_lo, double r_hi) {
  check_interval(r_lo, r_hi);
  switch (p.kind) {
    case ProfileKind::Power: return power_log_moment(p.alpha, power, r_lo, r_hi);
    case ProfileKind::Log: return log_log_moment(p.alpha, power, r_lo, r_hi);
    case ProfileKind::Unit: return r_lo == 0.0 ? kInf : std::log(r_hi / r_lo);
  }
  return kInf;
}

AssumptionReport check_assumptions(const RadialProfile& p, int quadrature_points,
                                   std::span<const double> epsilons, double bound) {
  if (quadrature_points < 16) throw ConfigurationError("check_assumptions: need >= 16 quadrature points");
  p.validate();
  AssumptionReport rep;
  rep.bound = bound;
  rep.epsilons.assign(epsilons.begin(), epsilons.end());
  rep.integral_a_over_r = profile_log_moment(p, 1, 0.0, 1.0);

  switch (p.kind) {
    case ProfileKind::Power:
      rep.integral_r_over_a = 1.0 / (2.0 - p.alpha);
      break;
    case ProfileKind::Unit:
      rep.integral_r_over_a = 0.5;
      break;
    case ProfileKind::Log: {
      // r / a(r) = r log(2/r)^alpha has no elementary antiderivative.
      const detail::GaussLegendre rule(quadrature_points);
      const double alpha = p.alpha;
      rep.integral_r_over_a = detail::integrate_to_zero(
          rule, [alpha](double r) { return r * std::pow(std::log(2.0 / r), alpha); }, 1.0);
      break;
    }
  }

  // (1/eps^2) ∫_0^eps a^{-1}(r) r ∫_0^r a(s)/s ds dr
  for (double eps : epsilons) {
    if (!(eps > 0.0 && eps < 1.0)) throw DomainError("check_assumptions: epsilons must lie in (0, 1)");
    double value = kInf;
    switch (p.kind) {
      case ProfileKind::Power:
        value = 1.0 / (2.0 * p.alpha);
        break;
      case ProfileKind::Log:
        // inner integral = log(2/r)^{1-alpha}/(alpha-1), so the integrand is
        // r log(2/r)/(alpha-1).
        value = (0.5 * std::log(2.0 / eps) + 0.25) / (p.alpha - 1.0);
        break;
      case ProfileKind::Unit:
        value = kInf;
        break;
    }
    rep.onerank_values.push_back(value);
    rep.onerank_sup = std::max(rep.onerank_sup, value);
  }

  rep.passed = std::isfinite(rep.integral_a_over_r) && std::isfinite(rep.integral_r_over_a) &&
               std::isfinite(rep.onerank_sup) && rep.onerank_sup < bound;
  return rep;
}

double radial_resistance(const WeightSpec& w, int cone, double r_lo, double r_hi, double dtheta) {
  check_interval(r_lo, r_hi);
  if (!(dtheta > 0.0)) throw DomainError("radial_resistance: dtheta must be positive");
  const int s = cone_exponent(w, cone);
  // 1/rho = a^{-s}
  const double integral = split_at_cutoff(
      w, r_lo, r_hi,
      [&](double lo, double hi) { return profile_log_moment(w.profile, -s, lo, hi); },
      [](double lo, double hi) { return std::log(hi / lo); });
  return integral / dtheta;
}

double angular_moment(const WeightSpec& w, int cone, double r_lo, double r_hi) {
  check_interval(r_lo, r_hi);
  const int s = cone_exponent(w, cone);
  return split_at_cutoff(
      w, r_lo, r_hi,
      [&](double lo, double hi) { return profile_log_moment(w.profile, s, lo, hi); },
      [](double lo, double hi) { return std::log(hi / lo); });
}

double mass_moment(const WeightSpec& w, int cone, double r_lo, double r_hi) {
  check_interval(r_lo, r_hi);
  const int s = cone_exponent(w, cone);
  const auto inner = [&](double lo, double hi) -> double {
    switch (w.profile.kind) {
      case ProfileKind::Power: return power_mass_moment(w.profile.alpha, s, lo, hi);
      case ProfileKind::Unit: return 0.5 * (hi * hi - lo * lo);
      case ProfileKind::Log: {
        const double e = -s * w.profile.alpha;  // rho = log(2/r)^{-s alpha}
        static const detail::GaussLegendre rule(24);
        const auto f = [e](double r) { return r * std::pow(std::log(2.0 / r), e); };
        if (lo <= 0.0) return detail::integrate_to_zero(rule, f, hi);
        return detail::integrate_geometric(rule, f, lo, hi);
      }
    }
    return 0.0;
  };
  return split_at_cutoff(w, r_lo, r_hi, inner,
                         [](double lo, double hi) { return 0.5 * (hi * hi - lo * lo); });
}

}  // namespace sdl

#pragma once

#include <functional>
#include <vector>

namespace sdl::detail {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(int points);

  double integrate(const std::function<double(double)>& f, double a, double b) const;
  int points() const { return static_cast<int>(nodes_.size()); }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Integral of f over (0, hi] using dyadic panels [hi 2^{-k-1}, hi 2^{-k}],
/// stopping once a panel contributes less than rel_tol of the running total.
/// f may be singular (but integrable) at 0.
double integrate_to_zero(const GaussLegendre& rule, const std::function<double(double)>& f,
                         double hi, double rel_tol = 1e-16);

/// Integral of f over [lo, hi] with 0 < lo, split into geometric panels of
/// ratio at most `ratio`. Exact to rounding for integrands analytic in a
/// neighbourhood of each panel.
double integrate_geometric(const GaussLegendre& rule, const std::function<double(double)>& f, double lo,
                           double hi, double ratio = 1.5);

}  // namespace sdl::detail

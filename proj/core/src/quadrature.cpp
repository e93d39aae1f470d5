#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/legendre.hpp>

namespace sdl::detail {

GaussLegendre::GaussLegendre(int points) {
  if (points < 2) throw std::invalid_argument("GaussLegendre: need at least 2 points");
  // legendre_p_zeros returns the non-negative roots in increasing order.
  const auto zeros = boost::math::legendre_p_zeros<double>(points);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(points, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (x == 0.0) {
      nodes_.push_back(0.0);
      weights_.push_back(w);
    } else {
      nodes_.push_back(x);
      weights_.push_back(w);
      nodes_.push_back(-x);
      weights_.push_back(w);
    }
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double a, double b) const {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
  return half * sum;
}

double integrate_to_zero(const GaussLegendre& rule, const std::function<double(double)>& f,
                         double hi, double rel_tol) {
  double total = 0.0;
  double b = hi;
  // 2^-1074 is the smallest double; 1100 panels is a hard stop.
  for (int k = 0; k < 1100; ++k) {
    const double a = 0.5 * b;
    const double panel = rule.integrate(f, a, b);
    total += panel;
    if (k > 4 && std::abs(panel) <= rel_tol * std::abs(total)) break;
    b = a;
  }
  return total;
}

double integrate_geometric(const GaussLegendre& rule, const std::function<double(double)>& f, double lo,
                           double hi, double ratio) {
  if (hi <= lo) return 0.0;
  const int panels = std::max(1, static_cast<int>(std::ceil(std::log(hi / lo) / std::log(ratio))));
  const double step = std::pow(hi / lo, 1.0 / panels);
  double total = 0.0;
  double a = lo;
  for (int k = 0; k < panels; ++k) {
    const double b = k + 1 == panels ? hi : a * step;
    total += rule.integrate(f, a, b);
    a = b;
  }
  return total;
}

}  // namespace sdl::detail

#pragma once

// Independent reference computations for the tests: adaptive Simpson in the
// log variable and dense linear algebra.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sdl/forms.hpp"
#include "sdl/polar_mesh.hpp"

namespace oracle {

namespace detail {
inline double simpson(const std::function<double(double)>& g, double a, double b, double fa, double fm,
                      double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * std::max(tol, 1e-15 * std::abs(left + right)))
    return left + right + (left + right - whole) / 15.0;
  return simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Integral of f over [lo, hi] with 0 <= lo < hi, computed as the integral of
/// f(e^s) e^s ds by adaptive Simpson on panels of unit length in s. lo = 0 is
/// cut at 1e-40.
inline double integrate(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13) {
  const double s0 = std::log(std::max(lo, 1e-40));
  const double s1 = std::log(hi);
  const auto g = [&](double s) {
    const double r = std::exp(s);
    return f(r) * r;
  };
  const int panels = std::max(1, static_cast<int>(std::ceil(s1 - s0)));
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = s0 + (s1 - s0) * p / panels;
    const double b = s0 + (s1 - s0) * (p + 1) / panels;
    const double fa = g(a), fb = g(b), fm = g(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    sum += detail::simpson(g, a, b, fa, fm, fb, whole, tol / panels, 24);
  }
  return sum;
}

/// Integral over [t0, inf) of a function of t = log(2/r); exp-sinh handles
/// the algebraic decay of Log-profile integrands in this variable.
inline double integrate_log_tail(const std::function<double(double)>& g, double t0) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate(g, t0, std::numeric_limits<double>::infinity(), 1e-14);
}

inline Eigen::MatrixXd dense(const Eigen::SparseMatrix<double>& a) { return Eigen::MatrixXd(a); }

inline Eigen::MatrixXd dense_shifted(const sdl::FormMatrices& f, double alpha) {
  Eigen::MatrixXd a = dense(f.stiffness);
  a.diagonal() += alpha * f.mass;
  return a;
}

/// Solves A x = b with x fixed on `pinned` (dense, full pivoting LU).
inline Eigen::VectorXd pinned_solve(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const std::vector<int>& pinned,
                                    const Eigen::VectorXd& values) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> is_pinned(n, -1);
  for (std::size_t k = 0; k < pinned.size(); ++k) is_pinned[pinned[k]] = static_cast<int>(k);
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (is_pinned[i] < 0) free.push_back(i);
  const int nf = static_cast<int>(free.size());
  Eigen::MatrixXd aff(nf, nf);
  Eigen::VectorXd rhs(nf);
  for (int r = 0; r < nf; ++r) {
    rhs[r] = b[free[r]];
    for (int c = 0; c < nf; ++c) aff(r, c) = a(free[r], free[c]);
    for (std::size_t k = 0; k < pinned.size(); ++k) rhs[r] -= a(free[r], pinned[k]) * values[k];
  }
  const Eigen::VectorXd xf = aff.fullPivLu().solve(rhs);
  Eigen::VectorXd x(n);
  for (std::size_t k = 0; k < pinned.size(); ++k) x[pinned[k]] = values[k];
  for (int r = 0; r < nf; ++r) x[free[r]] = xf[r];
  return x;
}

}  // namespace oracle

#pragma once

// Potential theory on an assembled form: capacities, hitting probabilities,
// resolvents, and the one-point / two-point extension identities that rebuild
// the full resolvent from the killed one.

#include <span>
#include <vector>

#include "sdl/forms.hpp"
#include "sdl/linalg.hpp"

namespace sdl {

struct CapacityResult {
  double value = 0.0;
  MeshFunction minimizer;  // equilibrium potential, 1 on the target
};

/// cap_alpha(target) = min e1(u, u, alpha) over u = 1 on target. The
/// minimizer is checked to stay in [0, 1].
CapacityResult capacity(const FormMatrices& f, std::span<const int> target, double alpha,
                        const SolverOptions& opts = {});

/// Mesh nodes of the cone (0, eps) x (theta_lo, theta_hi), centres strictly
/// inside.
std::vector<int> cone_nodes(const PolarMesh& mesh, double eps, double theta_lo, double theta_hi);

struct ConeCapacityReport {
  double cap_plus = 0.0;   // A+ = (0, eps) x (pi/2 + delta, pi - delta)
  double cap_minus = 0.0;  // A- = (0, eps) x (-pi/2 + delta, -delta)
  double bound = 0.0;      // (1/delta) * integral_0^{2 eps} a(r)/r dr
  int nodes_plus = 0;
  int nodes_minus = 0;
};

/// Requires eps >= 2 r_min and delta >= 2 dtheta.
ConeCapacityReport cone_capacity_report(const FormMatrices& f, double eps, double delta,
                                        double alpha = 1.0, const SolverOptions& opts = {});

/// One function per origin node: probability of reaching that origin node
/// first (alpha = 0 harmonic extension of the indicator).
std::vector<MeshFunction> hitting_probs(const FormMatrices& f, const SolverOptions& opts = {});

struct HittingPair {
  MeshFunction phi_plus;
  MeshFunction phi_minus;
};

/// Two-point split: phi_plus = P(hit 0+ before 0-), phi_minus = 1 - phi_plus.
HittingPair hitting_probs_split(const FormMatrices& f, const SolverOptions& opts = {});

/// (S + alpha M) u = 0 off the origin, u = boundary on the origin nodes.
MeshFunction alpha_hitting(const FormMatrices& f, double alpha, const Eigen::VectorXd& boundary,
                           const SolverOptions& opts = {});

/// (S + alpha M) u = M f on the full topology.
MeshFunction resolvent(const FormMatrices& f, double alpha, const MeshFunction& rhs,
                       const SolverOptions& opts = {});
/// Same on a Killed topology.
MeshFunction killed_resolvent(const FormMatrices& f_killed, double alpha, const MeshFunction& rhs,
                              const SolverOptions& opts = {});

struct GammaCoefficients {
  double gamma_pm = 0.0;        // sum over edges i~0+ of c_i phi_minus(i)
  double gamma_pp_alpha = 0.0;  // alpha <u+_alpha, phi_plus>
  double gamma_pm_alpha = 0.0;  // alpha <u+_alpha, phi_minus>
};

GammaCoefficients gamma_coefficients(const FormMatrices& f_split, double alpha,
                                     const SolverOptions& opts = {});

struct OnePointCheck {
  double residual_linf = 0.0;
  double g_at_origin = 0.0;
  double formula_value = 0.0;
};

/// G_alpha f against G0_alpha f + <u_alpha, f>/(alpha <u_alpha, 1>) u_alpha.
/// f has one value per mesh node (the origin carries no mass).
OnePointCheck verify_one_point(const FormMatrices& f_glued, const FormMatrices& f_killed, double alpha,
                               const MeshFunction& f, const SolverOptions& opts = {});

struct TwoPointCheck {
  double phi0_plus_formula = 0.0;
  double phi0_minus_formula = 0.0;
  double phi0_plus_direct = 0.0;
  double phi0_minus_direct = 0.0;
  double origin_rel_diff = 0.0;  // max relative gap formula vs direct at 0+/0-
  double residual_linf = 0.0;    // nodewise representation error
};

/// g has one value per mesh node.
TwoPointCheck verify_two_point(const FormMatrices& f_split, const FormMatrices& f_killed, double alpha,
                               const MeshFunction& g, const SolverOptions& opts = {});

struct OriginEdgeMass {
  int sector = 0;
  int cone = 0;
  double conductance = 0.0;
  double mass = 0.0;
};

struct HarmonicMeasure {
  std::vector<OriginEdgeMass> edges;  // one entry per innermost sector
  double odd_mass = 0.0;
  double even_mass = 0.0;
};

/// Exit distribution over the origin links for the chain started from a
/// source distribution on mesh nodes (killed Green function, alpha = 0).
HarmonicMeasure harmonic_measure_origin(const FormMatrices& f, const Eigen::VectorXd& source,
                                        const SolverOptions& opts = {});
HarmonicMeasure harmonic_measure_origin(const FormMatrices& f, int start, const SolverOptions& opts = {});

}  // namespace sdl

#include "sdl/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdl/errors.hpp"

namespace sdl {

namespace {

MeshFunction extend_to_topology(const FormMatrices& f, const MeshFunction& v, const char* what) {
  const int n = f.node_count();
  const int nm = f.topology.mesh_nodes;
  if (v.size() == n) return v;
  if (v.size() != nm)
    throw DomainError(std::string(what) + ": expected " + std::to_string(nm) + " or " +
                      std::to_string(n) + " values, got " + std::to_string(v.size()));
  MeshFunction out = MeshFunction::Zero(n);
  out.head(nm) = v;
  return out;
}

void require_origin(const FormMatrices& f, const char* what) {
  if (f.topology.origin_nodes.empty())
    throw ConfigurationError(std::string(what) + ": needs a glued or split topology");
}

void require_split_pair(const FormMatrices& f, const char* what) {
  if (f.topology.mode != OriginMode::Split || f.topology.origin_nodes.size() != 2)
    throw ConfigurationError(std::string(what) + ": needs a two-point split topology");
}

void require_alpha(double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw DomainError(std::string(what) + ": alpha must be positive");
}

}  // namespace

CapacityResult capacity(const FormMatrices& f, std::span<const int> target, double alpha,
                        const SolverOptions& opts) {
  if (target.empty()) throw DomainError("capacity: empty target set");
  if (alpha < 0.0) throw DomainError("capacity: alpha must be >= 0");
  const int n = f.node_count();
  std::vector<int> pinned(target.begin(), target.end());
  std::sort(pinned.begin(), pinned.end());
  pinned.erase(std::unique(pinned.begin(), pinned.end()), pinned.end());
  for (int i : pinned)
    if (i < 0 || i >= n) throw DomainError("capacity: target node " + std::to_string(i) + " out of range");

  const SparseMatrix a = f.shifted(alpha);
  const PinnedSolver solver(a, pinned, opts);
  CapacityResult res;
  res.minimizer = solver.solve(Eigen::VectorXd::Zero(n), Eigen::VectorXd::Ones(pinned.size()));
  res.value = e1(f, res.minimizer, res.minimizer, alpha);

  const double lo = res.minimizer.minCoeff();
  const double hi = res.minimizer.maxCoeff();
  if (lo < -1e-9 || hi > 1.0 + 1e-9)
    throw NumericalError("capacity: equilibrium potential left [0, 1] (range " + std::to_string(lo) +
                         " .. " + std::to_string(hi) + ")");
  return res;
}

std::vector<int> cone_nodes(const PolarMesh& mesh, double eps, double theta_lo, double theta_hi) {
  std::vector<int> out;
  for (int k = 0; k < mesh.rings() && mesh.radius(k) < eps; ++k)
    for (int j = 0; j < mesh.sectors(); ++j) {
      const double t = mesh.sector_angle_signed(j);
      if (t > theta_lo && t < theta_hi) out.push_back(mesh.node(k, j));
    }
  return out;
}

ConeCapacityReport cone_capacity_report(const FormMatrices& f, double eps, double delta, double alpha,
                                        const SolverOptions& opts) {
  const PolarMesh& mesh = f.mesh;
  if (!(eps >= 2.0 * mesh.r_min()))
    throw ConfigurationError("cone: eps = " + std::to_string(eps) + " is below 2 r_min");
  if (!(delta >= 2.0 * mesh.dtheta() * (1.0 - 1e-12)))
    throw ConfigurationError("cone: delta = " + std::to_string(delta) + " is below 2 dtheta");
  if (!(delta < kPi / 4.0)) throw ConfigurationError("cone: delta must be < pi/4");
  if (2.0 * eps > f.weight.cutoff_radius)
    throw ConfigurationError("cone: 2 eps must stay inside the cutoff disk");

  const std::vector<int> plus = cone_nodes(mesh, eps, 0.5 * kPi + delta, kPi - delta);
  const std::vector<int> minus = cone_nodes(mesh, eps, -0.5 * kPi + delta, -delta);
  if (plus.empty() || minus.empty())
    throw ConfigurationError("cone: no mesh nodes inside the cone; refine the mesh");

  ConeCapacityReport r;
  r.cap_plus = capacity(f, plus, alpha, opts).value;
  r.cap_minus = capacity(f, minus, alpha, opts).value;
  r.bound = profile_log_moment(f.weight.profile, 1, 0.0, 2.0 * eps) / delta;
  r.nodes_plus = static_cast<int>(plus.size());
  r.nodes_minus = static_cast<int>(minus.size());
  return r;
}

MeshFunction alpha_hitting(const FormMatrices& f, double alpha, const Eigen::VectorXd& boundary,
                           const SolverOptions& opts) {
  require_origin(f, "alpha_hitting");
  if (alpha < 0.0) throw DomainError("alpha_hitting: alpha must be >= 0");
  if (boundary.size() != static_cast<Eigen::Index>(f.topology.origin_nodes.size()))
    throw DomainError("alpha_hitting: need one boundary value per origin node");
  const PinnedSolver solver(f.shifted(alpha), f.topology.origin_nodes, opts);
  return solver.solve(Eigen::VectorXd::Zero(f.node_count()), boundary);
}

std::vector<MeshFunction> hitting_probs(const FormMatrices& f, const SolverOptions& opts) {
  require_origin(f, "hitting_probs");
  const auto n = static_cast<Eigen::Index>(f.topology.origin_nodes.size());
  const PinnedSolver solver(f.stiffness, f.topology.origin_nodes, opts);
  std::vector<MeshFunction> out;
  for (Eigen::Index i = 0; i < n; ++i)
    out.push_back(solver.solve(Eigen::VectorXd::Zero(f.node_count()), Eigen::VectorXd::Unit(n, i)));
  return out;
}

HittingPair hitting_probs_split(const FormMatrices& f, const SolverOptions& opts) {
  require_split_pair(f, "hitting_probs_split");
  std::vector<MeshFunction> phi = hitting_probs(f, opts);
  return {std::move(phi[0]), std::move(phi[1])};
}

MeshFunction resolvent(const FormMatrices& f, double alpha, const MeshFunction& rhs,
                       const SolverOptions& opts) {
  require_alpha(alpha, "resolvent");
  const MeshFunction g = extend_to_topology(f, rhs, "resolvent");
  return SpdSolver(f.shifted(alpha), opts).solve(f.mass.cwiseProduct(g));
}

MeshFunction killed_resolvent(const FormMatrices& f_killed, double alpha, const MeshFunction& rhs,
                              const SolverOptions& opts) {
  if (f_killed.topology.mode != OriginMode::Killed)
    throw ConfigurationError("killed_resolvent: needs a killed topology");
  return resolvent(f_killed, alpha, rhs, opts);
}

GammaCoefficients gamma_coefficients(const FormMatrices& f_split, double alpha, const SolverOptions& opts) {
  require_split_pair(f_split, "gamma_coefficients");
  require_alpha(alpha, "gamma_coefficients");
  const HittingPair phi = hitting_probs_split(f_split, opts);
  const MeshFunction u_plus = alpha_hitting(f_split, alpha, Eigen::Vector2d(1.0, 0.0), opts);
  const int origin_plus = f_split.topology.origin_nodes[0];

  GammaCoefficients g;
  for (const Edge& e : f_split.edges) {
    if (e.b == origin_plus) g.gamma_pm += e.conductance * phi.phi_minus[e.a];
    else if (e.a == origin_plus) g.gamma_pm += e.conductance * phi.phi_minus[e.b];
  }
  g.gamma_pp_alpha = alpha * inner(f_split, u_plus, phi.phi_plus);
  g.gamma_pm_alpha = alpha * inner(f_split, u_plus, phi.phi_minus);
  return g;
}

OnePointCheck verify_one_point(const FormMatrices& f_glued, const FormMatrices& f_killed, double alpha,
                               const MeshFunction& f, const SolverOptions& opts) {
  if (f_glued.topology.mode != OriginMode::Glued)
    throw ConfigurationError("verify_one_point: first form must be glued");
  if (f_killed.topology.mode != OriginMode::Killed)
    throw ConfigurationError("verify_one_point: second form must be killed");
  if (f_killed.topology.mesh_nodes != f_glued.topology.mesh_nodes)
    throw ConfigurationError("verify_one_point: meshes differ");
  require_alpha(alpha, "verify_one_point");

  const int nm = f_glued.topology.mesh_nodes;
  const MeshFunction fg = extend_to_topology(f_glued, f, "verify_one_point");
  const MeshFunction full = resolvent(f_glued, alpha, fg, opts);
  const MeshFunction killed = killed_resolvent(f_killed, alpha, fg.head(nm), opts);
  const MeshFunction u = alpha_hitting(f_glued, alpha, Eigen::VectorXd::Ones(1), opts);

  const double denom = alpha * inner(f_glued, u, MeshFunction::Ones(f_glued.node_count()));
  if (!(denom > 1e-300)) throw NumericalError("verify_one_point: <u_alpha, 1> vanishes (degenerate mesh)");
  const double coef = inner(f_glued, u, fg) / denom;

  MeshFunction rebuilt = coef * u;
  rebuilt.head(nm) += killed;

  OnePointCheck c;
  c.residual_linf = (full - rebuilt).lpNorm<Eigen::Infinity>();
  c.g_at_origin = full[f_glued.topology.origin_nodes[0]];
  c.formula_value = coef;
  return c;
}

TwoPointCheck verify_two_point(const FormMatrices& f_split, const FormMatrices& f_killed, double alpha,
                               const MeshFunction& g, const SolverOptions& opts) {
  require_split_pair(f_split, "verify_two_point");
  if (f_killed.topology.mode != OriginMode::Killed)
    throw ConfigurationError("verify_two_point: second form must be killed");
  if (f_killed.topology.mesh_nodes != f_split.topology.mesh_nodes)
    throw ConfigurationError("verify_two_point: meshes differ");
  require_alpha(alpha, "verify_two_point");

  const int nm = f_split.topology.mesh_nodes;
  const MeshFunction gs = extend_to_topology(f_split, g, "verify_two_point");
  const GammaCoefficients gc = gamma_coefficients(f_split, alpha, opts);
  const MeshFunction up = alpha_hitting(f_split, alpha, Eigen::Vector2d(1.0, 0.0), opts);
  const MeshFunction um = alpha_hitting(f_split, alpha, Eigen::Vector2d(0.0, 1.0), opts);

  const double ip = inner(f_split, up, gs);
  const double im = inner(f_split, um, gs);
  const double iu = ip + im;
  const double denom = (gc.gamma_pp_alpha + gc.gamma_pm_alpha) *
                       (gc.gamma_pp_alpha - gc.gamma_pm_alpha + 2.0 * gc.gamma_pm);
  if (std::abs(denom) < 1e-14)
    throw NumericalError("verify_two_point: gamma denominator vanishes (degenerate mesh)");

  TwoPointCheck c;
  c.phi0_plus_formula = (gc.gamma_pp_alpha * ip - gc.gamma_pm_alpha * im + gc.gamma_pm * iu) / denom;
  c.phi0_minus_formula = (gc.gamma_pp_alpha * im - gc.gamma_pm_alpha * ip + gc.gamma_pm * iu) / denom;

  const MeshFunction full = resolvent(f_split, alpha, gs, opts);
  c.phi0_plus_direct = full[f_split.topology.origin_nodes[0]];
  c.phi0_minus_direct = full[f_split.topology.origin_nodes[1]];
  auto rel = [](double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
  };
  c.origin_rel_diff = std::max(rel(c.phi0_plus_formula, c.phi0_plus_direct),
                               rel(c.phi0_minus_formula, c.phi0_minus_direct));

  MeshFunction rebuilt = up * c.phi0_plus_formula + um * c.phi0_minus_formula;
  rebuilt.head(nm) += killed_resolvent(f_killed, alpha, gs.head(nm), opts);
  c.residual_linf = (full - rebuilt).lpNorm<Eigen::Infinity>();
  return c;
}

HarmonicMeasure harmonic_measure_origin(const FormMatrices& f, const Eigen::VectorXd& source,
                                        const SolverOptions& opts) {
  require_origin(f, "harmonic_measure_origin");
  const int nm = f.topology.mesh_nodes;
  if (source.size() != nm) throw DomainError("harmonic_measure_origin: source must live on mesh nodes");
  if ((source.array() < 0.0).any() || !(source.sum() > 0.0))
    throw DomainError("harmonic_measure_origin: source must be a nonnegative nonzero distribution");

  // Green function of the chain killed at the origin nodes: S_II g = source.
  const SparseMatrix s_ii = f.stiffness.topLeftCorner(nm, nm);
  const Eigen::VectorXd green = SpdSolver(s_ii, opts).solve(source);

  const PolarMesh& mesh = f.mesh;
  HarmonicMeasure hm;
  double total = 0.0;
  for (int j = 0; j < mesh.sectors(); ++j) {
    OriginEdgeMass e;
    e.sector = j;
    e.cone = cone_of_angle(f.weight, mesh.sector_angle(j));
    const bool attached = f.topology.arc_assignment[j] >= 0;
    e.conductance = attached ? f.origin_link[j] : 0.0;
    e.mass = e.conductance * green[mesh.node(0, j)];
    total += e.mass;
    hm.edges.push_back(e);
  }
  if (!(total > 0.0)) throw NumericalError("harmonic_measure_origin: no flux reaches the origin");
  for (OriginEdgeMass& e : hm.edges) {
    e.mass /= total;
    const bool odd = f.weight.is_regular() ? (e.cone % 2 == 1) : cone_exponent(f.weight, e.cone) < 0;
    (odd ? hm.odd_mass : hm.even_mass) += e.mass;
  }
  return hm;
}

HarmonicMeasure harmonic_measure_origin(const FormMatrices& f, int start, const SolverOptions& opts) {
  if (start < 0 || start >= f.node_count()) throw DomainError("harmonic_measure_origin: start out of range");
  if (f.topology.is_origin(start)) throw DomainError("harmonic_measure_origin: start is an origin node");
  Eigen::VectorXd src = Eigen::VectorXd::Zero(f.topology.mesh_nodes);
  src[start] = 1.0;
  return harmonic_measure_origin(f, src, opts);
}

}  // namespace sdl

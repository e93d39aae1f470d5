#include "sdl/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

#include "sdl/errors.hpp"

namespace sdl {

namespace {

void check_size(const MeshFunction& u, int n, const char* what) {
  if (u.size() != n)
    throw DomainError(std::string(what) + ": function has " + std::to_string(u.size()) +
                      " values, topology has " + std::to_string(n) + " nodes");
}

void check_connected(const FormMatrices& f) {
  const int n = f.node_count();
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : f.edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        q.push(w);
      }
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) {
      const std::string which = f.topology.is_origin(v)
                                    ? "origin node " + std::to_string(f.topology.origin_slot(v))
                                    : "mesh node " + std::to_string(v);
      throw AssemblyError("disconnected graph: " + which +
                          " has no positive-conductance path to the rest of the mesh");
    }
}

// Quadrant of a sector centre: 1..4.
int quadrant(double theta) { return static_cast<int>(std::floor(theta / (0.5 * kPi))) % 4 + 1; }

}  // namespace

SparseMatrix FormMatrices::shifted(double alpha) const {
  SparseMatrix a = stiffness;
  for (int i = 0; i < node_count(); ++i)
    if (mass[i] != 0.0) a.coeffRef(i, i) += alpha * mass[i];
  return a;
}

FormMatrices assemble(const PolarMesh& mesh, const Topology& topology, const WeightSpec& weight) {
  if (topology.mesh_nodes != mesh.node_count())
    throw ConfigurationError("topology was built for a different mesh");
  FormMatrices f{mesh, weight, topology, {}, {}, {}, {}, {}};
  const int n = topology.node_count();
  const int rings = mesh.rings();
  const int sectors = mesh.sectors();
  const double dt = mesh.dtheta();

  std::vector<int> cone(sectors);
  for (int j = 0; j < sectors; ++j) cone[j] = cone_of_angle(weight, mesh.sector_angle(j));

  f.mass = Eigen::VectorXd::Zero(n);
  f.absorption = Eigen::VectorXd::Zero(topology.mesh_nodes);
  for (int k = 0; k < rings; ++k)
    for (int j = 0; j < sectors; ++j)
      f.mass[mesh.node(k, j)] = dt * mass_moment(weight, cone[j], mesh.cell_inner(k), mesh.cell_outer(k));

  auto add_edge = [&](int a, int b, double resistance) {
    if (std::isfinite(resistance) && resistance > 0.0) f.edges.push_back({a, b, 1.0 / resistance});
  };

  for (int k = 0; k < rings; ++k) {
    std::vector<double> moment(sectors);
    for (int j = 0; j < sectors; ++j)
      moment[j] = angular_moment(weight, cone[j], mesh.cell_inner(k), mesh.cell_outer(k));
    for (int j = 0; j < sectors; ++j) {
      const int jn = (j + 1) % sectors;
      // Series of the two half-sector resistances (harmonic mean across cone faces).
      add_edge(mesh.node(k, j), mesh.node(k, jn), 0.5 * dt / moment[j] + 0.5 * dt / moment[jn]);
      if (k + 1 < rings)
        add_edge(mesh.node(k, j), mesh.node(k + 1, j),
                 radial_resistance(weight, cone[j], mesh.radius(k), mesh.radius(k + 1), dt));
    }
  }

  f.origin_link.assign(sectors, 0.0);
  for (int j = 0; j < sectors; ++j) {
    const double r = radial_resistance(weight, cone[j], topology.inner_radius, mesh.r_min(), dt);
    f.origin_link[j] = std::isfinite(r) ? 1.0 / r : 0.0;
    if (f.origin_link[j] == 0.0) continue;
    const int inner = mesh.node(0, j);
    if (topology.mode == OriginMode::Killed) {
      f.absorption[inner] = f.origin_link[j];
    } else if (topology.arc_assignment[j] >= 0) {
      f.edges.push_back({inner, topology.origin_nodes[topology.arc_assignment[j]], f.origin_link[j]});
    }
  }

  std::vector<double> diag(n, 0.0);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * f.edges.size() + n);
  for (const Edge& e : f.edges) {
    trip.emplace_back(e.a, e.b, -e.conductance);
    trip.emplace_back(e.b, e.a, -e.conductance);
    diag[e.a] += e.conductance;
    diag[e.b] += e.conductance;
  }
  for (int i = 0; i < topology.mesh_nodes; ++i) diag[i] += f.absorption[i];
  for (int i = 0; i < n; ++i) trip.emplace_back(i, i, diag[i]);
  f.stiffness.resize(n, n);
  f.stiffness.setFromTriplets(trip.begin(), trip.end());
  f.stiffness.makeCompressed();

  check_connected(f);
  return f;
}

double energy(const FormMatrices& f, const MeshFunction& u, const MeshFunction& v) {
  check_size(u, f.node_count(), "energy");
  check_size(v, f.node_count(), "energy");
  // Edge form: no cancellation between diagonal and off-diagonal terms.
  double sum = 0.0;
  for (const Edge& e : f.edges) sum += e.conductance * (u[e.a] - u[e.b]) * (v[e.a] - v[e.b]);
  for (int i = 0; i < f.topology.mesh_nodes; ++i) sum += f.absorption[i] * u[i] * v[i];
  return sum;
}

double inner(const FormMatrices& f, const MeshFunction& u, const MeshFunction& v) {
  check_size(u, f.node_count(), "inner");
  check_size(v, f.node_count(), "inner");
  return (u.array() * f.mass.array() * v.array()).sum();
}

double e1(const FormMatrices& f, const MeshFunction& u, const MeshFunction& v, double alpha) {
  return energy(f, u, v) + alpha * inner(f, u, v);
}

namespace {

double quadrant_trace(const MeshFunction& u, const PolarMesh& mesh, int q) {
  if (u.size() < mesh.node_count()) throw DomainError("trace: function shorter than the mesh");
  double sum = 0.0;
  for (int j = 0; j < mesh.sectors(); ++j)
    if (quadrant(mesh.sector_angle(j)) == q) sum += u[mesh.node(0, j)] * mesh.dtheta();
  return 2.0 / kPi * sum;
}

}  // namespace

double trace_plus(const MeshFunction& u, const PolarMesh& mesh) { return quadrant_trace(u, mesh, 1); }
double trace_minus(const MeshFunction& u, const PolarMesh& mesh) { return quadrant_trace(u, mesh, 3); }

JumpFunction psi_i_grid(const PolarMesh& mesh, const Topology& topology, int i, int n) {
  if (n < 2 || i < 1 || i > n) throw DomainError("psi_i_grid: need 1 <= i <= n and n >= 2");
  if (topology.mode == OriginMode::Killed) throw DomainError("psi_i_grid: needs a glued or split origin");
  if (topology.mode == OriginMode::Split && static_cast<int>(topology.origin_nodes.size()) != n)
    throw DomainError("psi_i_grid: split topology has a different number of origin points");

  const double width = kPi / n;
  const int odd = 2 * i - 1;
  const int after = 2 * i;
  const int before = i == 1 ? 2 * n : 2 * i - 2;

  JumpFunction out;
  out.values = MeshFunction::Zero(topology.node_count());
  for (int k = 0; k < mesh.rings(); ++k) {
    const double r = mesh.radius(k);
    const double cut = std::max(0.0, 1.0 - r * r);
    if (cut == 0.0) continue;
    for (int j = 0; j < mesh.sectors(); ++j) {
      const double theta = mesh.sector_angle(j);
      const int c = static_cast<int>(std::floor(theta / width)) + 1;
      const double local = theta - (c - 1) * width;  // angle within the cone, [0, pi/n)
      double v = 0.0;
      if (c == odd)
        v = 1.0;
      else if (c == after)
        v = std::cos(n * local / 2.0);
      else if (c == before)
        v = std::sin(n * local / 2.0);
      out.values[mesh.node(k, j)] = cut * v;
    }
  }
  if (topology.mode == OriginMode::Split) {
    out.values[topology.origin_nodes[i - 1]] = 1.0;
  } else {
    out.origin_by_convention = true;
  }
  return out;
}

JumpFunction psi0_grid(const PolarMesh& mesh, const Topology& topology) {
  return psi_i_grid(mesh, topology, 1, 2);
}

Decomposition decompose(const MeshFunction& u, const PolarMesh& mesh, const Topology& topology) {
  check_size(u, topology.node_count(), "decompose");
  const JumpFunction psi = psi0_grid(mesh, topology);
  const double gap_psi = trace_plus(psi.values, mesh) - trace_minus(psi.values, mesh);
  if (std::abs(gap_psi) < 1e-12) throw NumericalError("decompose: psi_0 has no trace gap on this mesh");
  Decomposition d;
  d.lambda = (trace_plus(u, mesh) - trace_minus(u, mesh)) / gap_psi;
  d.v = u - d.lambda * psi.values;
  return d;
}

double dist_to_glued(const MeshFunction& u, const FormMatrices& f_split, double alpha,
                     const SolverOptions& opts) {
  const Topology& t = f_split.topology;
  if (t.mode != OriginMode::Split) throw ConfigurationError("dist_to_glued: needs a split topology");
  if (!(alpha > 0.0)) throw DomainError("dist_to_glued: alpha must be positive");
  check_size(u, t.node_count(), "dist_to_glued");

  // Gluing map P: split node -> glued node (all origin points onto one).
  const int ng = t.mesh_nodes + 1;
  auto glue = [&](int i) { return t.is_origin(i) ? t.mesh_nodes : i; };
  const SparseMatrix a = f_split.shifted(alpha);
  std::vector<Eigen::Triplet<double>> trip;
  for (int col = 0; col < a.outerSize(); ++col)
    for (SparseMatrix::InnerIterator it(a, col); it; ++it)
      trip.emplace_back(glue(static_cast<int>(it.row())), glue(static_cast<int>(it.col())), it.value());
  SparseMatrix ag(ng, ng);
  ag.setFromTriplets(trip.begin(), trip.end());

  const Eigen::VectorXd au = a * u;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(ng);
  for (int i = 0; i < t.node_count(); ++i) rhs[glue(i)] += au[i];

  const Eigen::VectorXd z = SpdSolver(ag, opts).solve(rhs);
  MeshFunction d(t.node_count());
  for (int i = 0; i < t.node_count(); ++i) d[i] = u[i] - z[glue(i)];
  return e1(f_split, d, d, alpha);
}

}  // namespace sdl

#pragma once

// Discrete weighted Dirichlet form on a polar mesh, seen as an electrical
// network: E(u, v) = u^T S v with edge conductances taken from exact radial
// resistance integrals, and the reference measure mu = rho dx lumped into a
// diagonal mass vector.

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "sdl/linalg.hpp"
#include "sdl/polar_mesh.hpp"
#include "sdl/weights.hpp"

namespace sdl {

/// One real value per topology node (mesh nodes first, then origin nodes).
using MeshFunction = Eigen::VectorXd;

struct Edge {
  int a = 0;
  int b = 0;
  double conductance = 0.0;
};

struct FormMatrices {
  PolarMesh mesh;
  WeightSpec weight;
  Topology topology;

  SparseMatrix stiffness;   // S: S_ij = -c_ij, S_ii = sum_j c_ij (+ absorption)
  Eigen::VectorXd mass;     // m_i = integral of rho over the cell; 0 on origin nodes
  Eigen::VectorXd absorption;  // Killed mode: conductance into the removed origin
  std::vector<Edge> edges;  // every undirected edge once, conductance > 0
  /// Conductance of the radial link between each innermost sector and the
  /// origin (0 when the resistance integral diverges), whether or not the
  /// topology attaches that sector.
  std::vector<double> origin_link;

  int node_count() const { return topology.node_count(); }
  /// S + alpha M.
  SparseMatrix shifted(double alpha) const;
};

/// Builds S and M. Throws AssemblyError when an origin node ends up without
/// any positive-conductance edge (Glued/Split).
FormMatrices assemble(const PolarMesh& mesh, const Topology& topology, const WeightSpec& weight);

double energy(const FormMatrices& f, const MeshFunction& u, const MeshFunction& v);
/// E_alpha(u, v) = E(u, v) + alpha <u, v>_mu.
double e1(const FormMatrices& f, const MeshFunction& u, const MeshFunction& v, double alpha);
/// <u, v>_mu.
double inner(const FormMatrices& f, const MeshFunction& u, const MeshFunction& v);

/// (2/pi) * sum over innermost Q1 sectors of u * dtheta.
double trace_plus(const MeshFunction& u, const PolarMesh& mesh);
/// Same over Q3.
double trace_minus(const MeshFunction& u, const PolarMesh& mesh);

struct JumpFunction {
  MeshFunction values;
  /// Glued topology: the function has no well-defined origin value, which is
  /// set to 0.
  bool origin_by_convention = false;
};

/// psi_0(x) = (1 - |x|^2)_+ psi(x) with psi = 1 on Q1, x2/|x| on Q2, 0 on Q3,
/// x1/|x| on Q4; psi_0(0+) = 1 and psi_0(0-) = 0 on a split topology.
JumpFunction psi0_grid(const PolarMesh& mesh, const Topology& topology);

/// Multi-cone jump function psi_i (1 <= i <= n): 1 on C_{2i-1}, ramping to 0
/// across the two neighbouring even cones, 0 elsewhere; 1 at origin node i-1.
JumpFunction psi_i_grid(const PolarMesh& mesh, const Topology& topology, int i, int n);

struct Decomposition {
  double lambda = 0.0;
  MeshFunction v;
};

/// u = v + lambda psi_0 with trace_plus(v) == trace_minus(v).
Decomposition decompose(const MeshFunction& u, const PolarMesh& mesh, const Topology& topology);

/// min over w with equal values on all origin nodes of E_alpha(u - w, u - w).
double dist_to_glued(const MeshFunction& u, const FormMatrices& f_split, double alpha,
                     const SolverOptions& opts = {});

}  // namespace sdl

#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sdl/errors.hpp"
#include "sdl/forms.hpp"

using namespace sdl;

namespace {

WeightSpec power1() { return WeightSpec::two_quadrant(RadialProfile::power(1)); }

FormMatrices make(const WeightSpec& w, OriginMode mode, MeshParams p = {32, 32, 1e-3, 2.0, 1.35}) {
  const PolarMesh m = PolarMesh::build(p, w);
  return assemble(m, build_topology(m, w, mode), w);
}

Eigen::VectorXd random_vec(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("stiffness is a symmetric M-matrix with zero row sums") {
  for (OriginMode mode : {OriginMode::Glued, OriginMode::Split}) {
    const FormMatrices f = make(power1(), mode);
    const Eigen::MatrixXd s = oracle::dense(f.stiffness);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() == 0.0);
    Eigen::MatrixXd off = s;
    off.diagonal().setZero();
    CHECK(off.maxCoeff() <= 0.0);
    const Eigen::VectorXd rows = s.rowwise().sum().cwiseAbs().cwiseQuotient(s.diagonal());
    CHECK(rows.maxCoeff() <= 1e-12);
    CHECK(f.mass.head(f.topology.mesh_nodes).minCoeff() > 0.0);
    for (int o : f.topology.origin_nodes) CHECK(f.mass[o] == 0.0);
  }
}

TEST_CASE("killed stiffness absorbs exactly through the odd-cone links") {
  const FormMatrices f = make(power1(), OriginMode::Killed);
  const Eigen::MatrixXd s = oracle::dense(f.stiffness);
  const PolarMesh& m = f.mesh;
  for (int i = 0; i < s.rows(); ++i) {
    const double row = s.row(i).sum();
    CHECK(row >= -1e-12 * s(i, i));
    const bool link = m.ring_of(i) == 0 && cone_of_angle(f.weight, m.sector_angle(m.sector_of(i))) % 2 == 1;
    if (link) {
      CHECK(row == doctest::Approx(m.dtheta() / m.r_min()).epsilon(1e-10));
    } else {
      CHECK(std::abs(row) <= 1e-12 * s(i, i));
    }
  }
}

TEST_CASE("shifted operator is positive definite") {
  for (OriginMode mode : {OriginMode::Killed, OriginMode::Glued, OriginMode::Split}) {
    const FormMatrices f = make(power1(), mode, {12, 16, 1e-2, 2.0, 1.7});
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::dense(f.shifted(0.5)));
    CHECK(es.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("origin links for Power(1)") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  const PolarMesh& m = f.mesh;
  const Eigen::MatrixXd s = oracle::dense(f.stiffness);
  const int plus = f.topology.origin_nodes[0];
  const int minus = f.topology.origin_nodes[1];
  for (int j = 0; j < m.sectors(); ++j) {
    const int q = static_cast<int>(m.sector_angle(j) / (kPi / 2));
    const int i = m.node(0, j);
    CHECK(-s(i, plus) == doctest::Approx(q == 0 ? m.dtheta() / m.r_min() : 0.0).epsilon(1e-12));
    CHECK(-s(i, minus) == doctest::Approx(q == 2 ? m.dtheta() / m.r_min() : 0.0).epsilon(1e-12));
  }
  CHECK(s(plus, minus) == 0.0);
  const FormMatrices g = make(power1(), OriginMode::Glued);
  const Eigen::MatrixXd sg = oracle::dense(g.stiffness);
  const int o = g.topology.origin_nodes[0];
  for (int j = 0; j < m.sectors(); ++j) {
    const bool even = cone_of_angle(g.weight, m.sector_angle(j)) % 2 == 0;
    if (even) CHECK(sg(m.node(0, j), o) == 0.0);
  }
}

TEST_CASE("unit weight reproduces the polar five-point Laplacian") {
  const WeightSpec u = WeightSpec::unit_control();
  const FormMatrices f = make(u, OriginMode::Glued, {10, 16, 0.05, 2.0, 1.5});
  const PolarMesh& m = f.mesh;
  const Eigen::MatrixXd s = oracle::dense(f.stiffness);
  const double dt = m.dtheta();
  for (int k = 0; k < m.rings(); ++k)
    for (int j = 0; j < m.sectors(); ++j) {
      const int i = m.node(k, j);
      const int jn = (j + 1) % m.sectors();
      CHECK(-s(i, m.node(k, jn)) == doctest::Approx(std::log(m.cell_outer(k) / m.cell_inner(k)) / dt).epsilon(1e-12));
      if (k + 1 < m.rings())
        CHECK(-s(i, m.node(k + 1, j)) == doctest::Approx(dt / std::log(m.radius(k + 1) / m.radius(k))).epsilon(1e-12));
      CHECK(f.mass[i] == doctest::Approx(m.cell_area(i)).epsilon(1e-12));
    }
  // the glued origin stands for the disk of radius r_min / q
  const int o = f.topology.origin_nodes[0];
  CHECK(-s(m.node(0, 0), o) == doctest::Approx(dt / std::log(m.inner_ratio())).epsilon(1e-12));
}

TEST_CASE("mass vector integrates rho") {
  const WeightSpec w = WeightSpec::two_quadrant(RadialProfile::power(0.5));
  const FormMatrices f = make(w, OriginMode::Glued, {24, 16, 1e-3, 1.5, 1.5});
  // int over B(0,1.5) \ B(0,r_min) of rho: Q1,Q3 give 2 * (pi/2) * int r^{0.5} dr, Q2,Q4 int r^{1.5} dr
  const double r0 = 1e-3;
  const double inside = kPi * ((1.0 - std::pow(r0, 1.5)) / 1.5 + (1.0 - std::pow(r0, 2.5)) / 2.5);
  const double outside = kPi * (1.5 * 1.5 - 1.0);
  CHECK(f.mass.sum() == doctest::Approx(inside + outside).epsilon(1e-12));
}

TEST_CASE("energy in edge form matches the quadratic form") {
  const FormMatrices f = make(power1(), OriginMode::Split, {12, 16, 1e-2, 2.0, 1.7});
  const Eigen::VectorXd u = random_vec(f.node_count(), 1);
  const Eigen::VectorXd v = random_vec(f.node_count(), 2);
  const Eigen::MatrixXd s = oracle::dense(f.stiffness);
  CHECK(energy(f, u, v) == doctest::Approx(u.dot(s * v)).epsilon(1e-12));
  CHECK(energy(f, u, v) == doctest::Approx(energy(f, v, u)).epsilon(1e-14));
  CHECK(energy(f, u, u) > 0.0);
  CHECK(energy(f, Eigen::VectorXd::Constant(f.node_count(), 3.0), v) == doctest::Approx(0.0).scale(1.0));
  CHECK(e1(f, u, v, 2.0) == doctest::Approx(u.dot(s * v) + 2.0 * inner(f, u, v)).epsilon(1e-12));
  CHECK(inner(f, u, v) == doctest::Approx((u.array() * f.mass.array() * v.array()).sum()).epsilon(1e-14));
  CHECK_THROWS_AS(energy(f, Eigen::VectorXd::Zero(3), v), DomainError);
}

TEST_CASE("glued and split energies agree when the origin values agree") {
  const FormMatrices fs = make(power1(), OriginMode::Split);
  const FormMatrices fg = make(power1(), OriginMode::Glued);
  Eigen::VectorXd us = random_vec(fs.node_count(), 7);
  us[fs.topology.origin_nodes[1]] = us[fs.topology.origin_nodes[0]];
  Eigen::VectorXd ug = us.head(fg.node_count());
  ug[fg.topology.origin_nodes[0]] = us[fs.topology.origin_nodes[0]];
  CHECK(energy(fs, us, us) == doctest::Approx(energy(fg, ug, ug)).epsilon(1e-13));
}

TEST_CASE("traces") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  const PolarMesh& m = f.mesh;
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(f.node_count());
  CHECK(trace_plus(one, m) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(trace_minus(one, m) == doctest::Approx(1.0).epsilon(1e-14));
  const Eigen::VectorXd u = random_vec(f.node_count(), 3), v = random_vec(f.node_count(), 4);
  CHECK(trace_plus(2.0 * u + v, m) == doctest::Approx(2.0 * trace_plus(u, m) + trace_plus(v, m)).epsilon(1e-13));
  // a linear function vanishes at the origin; its innermost average is O(r_min)
  Eigen::VectorXd x1(f.node_count());
  x1.setZero();
  for (int i = 0; i < m.node_count(); ++i) x1[i] = m.position(i).x;
  CHECK(std::abs(trace_plus(x1, m)) < 2.0 * m.r_min());
  CHECK(std::abs(trace_minus(x1, m)) < 2.0 * m.r_min());
}

TEST_CASE("psi_0 node values") {
  const PolarMesh m = PolarMesh::build({4, 12, 0.125, 1.0, 2.0}, power1());
  const Topology t = build_topology(m, power1(), OriginMode::Split);
  const JumpFunction psi = psi0_grid(m, t);
  // ring 2 sits at r = 0.5; sector 1 is centred at pi/4, sector 4 at 3 pi/4
  CHECK(m.radius(2) == doctest::Approx(0.5));
  CHECK(psi.values[m.node(2, 1)] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(psi.values[m.node(2, 4)] == doctest::Approx(0.75 * std::sin(3 * kPi / 4)).epsilon(1e-14));
  // Q3 is zero, Q4 follows x1/|x|
  for (int j = 6; j < 9; ++j) CHECK(psi.values[m.node(1, j)] == 0.0);
  for (int j = 9; j < 12; ++j)
    CHECK(psi.values[m.node(1, j)] == doctest::Approx(0.9375 * std::cos(m.sector_angle(j))).epsilon(1e-14));
  for (int j = 0; j < 12; ++j) CHECK(psi.values[m.node(3, j)] == 0.0);
  CHECK(psi.values[t.origin_nodes[0]] == 1.0);
  CHECK(psi.values[t.origin_nodes[1]] == 0.0);
  CHECK_FALSE(psi.origin_by_convention);
  const JumpFunction pg = psi0_grid(m, build_topology(m, power1(), OriginMode::Glued));
  CHECK(pg.origin_by_convention);
  CHECK_THROWS_AS(psi0_grid(m, build_topology(m, power1(), OriginMode::Killed)), DomainError);
}

TEST_CASE("psi_0 traces tend to 1 and 0") {
  for (double r_min : {1e-2, 1e-4}) {
    const MeshParams p = with_r_min({32, 32, 1e-3, 2.0, 1.35}, power1(), r_min);
    const PolarMesh m = PolarMesh::build(p, power1());
    const JumpFunction psi = psi0_grid(m, build_topology(m, power1(), OriginMode::Split));
    CHECK(trace_plus(psi.values, m) == doctest::Approx(1.0 - r_min * r_min).epsilon(1e-12));
    CHECK(trace_minus(psi.values, m) == 0.0);
  }
}

TEST_CASE("multi-cone jump functions are continuous across cone faces") {
  const int n = 3;
  const WeightSpec w = WeightSpec::multi_cone(n, RadialProfile::power(1));
  const PolarMesh m = PolarMesh::build({8, 96, 0.01, 1.0, 2.0}, w);
  const Topology t = build_topology(m, w, OriginMode::Split);
  for (int i = 1; i <= n; ++i) {
    const JumpFunction psi = psi_i_grid(m, t, i, n);
    CHECK(psi.values[t.origin_nodes[i - 1]] == 1.0);
    const double jump_bound = n * m.dtheta();  // slope n/2 times one sector step
    for (int j = 0; j < m.sectors(); ++j) {
      const int jn = (j + 1) % m.sectors();
      CHECK(std::abs(psi.values[m.node(0, j)] - psi.values[m.node(0, jn)]) <= jump_bound);
    }
    for (int j = 0; j < m.sectors(); ++j) {
      const int cone = cone_of_angle(w, m.sector_angle(j));
      const double v = psi.values[m.node(0, j)];
      if (cone == 2 * i - 1) CHECK(v == doctest::Approx(1.0 - m.r_min() * m.r_min()));
      if (cone % 2 == 1 && cone != 2 * i - 1) CHECK(v == 0.0);
    }
  }
  CHECK_THROWS_AS(psi_i_grid(m, t, 0, n), DomainError);
  CHECK_THROWS_AS(psi_i_grid(m, t, 1, 2), DomainError);
}

TEST_CASE("decomposition examples") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  const PolarMesh& m = f.mesh;
  const Eigen::VectorXd psi = psi0_grid(m, f.topology).values;
  const Eigen::VectorXd one = Eigen::VectorXd::Ones(f.node_count());
  Decomposition d = decompose(2.0 * psi + one, m, f.topology);
  CHECK(d.lambda == doctest::Approx(2.0).epsilon(1e-13));
  CHECK((d.v - one).cwiseAbs().maxCoeff() < 1e-13);
  d = decompose(one, m, f.topology);
  CHECK(d.lambda == 0.0);
  for (unsigned s = 0; s < 5; ++s) {
    const Eigen::VectorXd u = random_vec(f.node_count(), 100 + s);
    d = decompose(u, m, f.topology);
    CHECK(std::abs(trace_plus(d.v, m) - trace_minus(d.v, m)) <= 1e-12);
    CHECK(((d.v + d.lambda * psi) - u).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("distance to glued functions against the constrained minimum") {
  const FormMatrices f = make(power1(), OriginMode::Split, {14, 16, 5e-3, 2.0, 1.6});
  const int plus = f.topology.origin_nodes[0], minus = f.topology.origin_nodes[1];
  const Eigen::MatrixXd a = oracle::dense_shifted(f, 1.0);
  // min d^T A d over (e+ - e-)^T d = J equals J^2 / (c^T A^-1 c)
  Eigen::VectorXd c = Eigen::VectorXd::Zero(f.node_count());
  c[plus] = 1.0;
  c[minus] = -1.0;
  const double denom = c.dot(a.ldlt().solve(c));
  for (unsigned s = 0; s < 3; ++s) {
    const Eigen::VectorXd u = random_vec(f.node_count(), 40 + s);
    const double jump = u[plus] - u[minus];
    CHECK(dist_to_glued(u, f, 1.0) == doctest::Approx(jump * jump / denom).epsilon(1e-9));
  }
  const JumpFunction psi = psi0_grid(f.mesh, f.topology);
  CHECK(dist_to_glued(psi.values, f, 1.0) == doctest::Approx(1.0 / denom).epsilon(1e-9));
  Eigen::VectorXd glued = random_vec(f.node_count(), 9);
  glued[minus] = glued[plus];
  CHECK(dist_to_glued(glued, f, 1.0) <= 1e-20);
  CHECK_THROWS_AS(dist_to_glued(glued, f, 0.0), DomainError);
  const FormMatrices g = make(power1(), OriginMode::Glued, {14, 16, 5e-3, 2.0, 1.6});
  CHECK_THROWS_AS(dist_to_glued(Eigen::VectorXd::Zero(g.node_count()), g, 1.0), ConfigurationError);
}

TEST_CASE("multi-cone split assembly") {
  const WeightSpec w = WeightSpec::multi_cone(3, RadialProfile::power(1));
  const FormMatrices f = make(w, OriginMode::Split, {10, 24, 0.01, 2.0, 1.8});
  CHECK(f.topology.origin_nodes.size() == 3);
  const Eigen::MatrixXd s = oracle::dense(f.stiffness);
  for (int o : f.topology.origin_nodes) CHECK(s(o, o) == doctest::Approx(4 * f.mesh.dtheta() / f.mesh.r_min()));
}

TEST_CASE("log profile assembly stays connected") {
  const FormMatrices f = make(WeightSpec::two_quadrant(RadialProfile::log(2)), OriginMode::Split);
  const Eigen::MatrixXd s = oracle::dense(f.stiffness);
  for (int o : f.topology.origin_nodes) CHECK(s(o, o) > 0.0);
  CHECK(f.edges.size() > 0);
}

}  // TEST_SUITE

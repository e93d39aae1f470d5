#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "sdl/errors.hpp"
#include "sdl/forms.hpp"
#include "sdl/parallel.hpp"
#include "sdl/potential.hpp"
#include "sdl/stochastic.hpp"

namespace sdl::runner {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

FormMatrices build(const WeightSpec& w, const MeshParams& p, OriginMode mode) {
  const PolarMesh mesh = PolarMesh::build(p, w);
  return assemble(mesh, build_topology(mesh, w, mode), w);
}

double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

// Deterministic [0, 1) samples on mesh nodes, one stream per sample index.
MeshFunction random_function(int n, std::uint64_t seed, std::uint64_t sample) {
  std::mt19937_64 rng(stream_seed(seed, sample));
  MeshFunction f(n);
  for (int i = 0; i < n; ++i) f[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return f;
}

// Indicator of the Q1 part of the annulus 0.1 <= r <= 0.5.
MeshFunction q1_annulus(const PolarMesh& mesh) {
  MeshFunction f = MeshFunction::Zero(mesh.node_count());
  for (int k = 0; k < mesh.rings(); ++k)
    for (int j = 0; j < mesh.sectors(); ++j) {
      const double r = mesh.radius(k);
      const double t = mesh.sector_angle(j);
      if (r >= 0.1 && r <= 0.5 && t < 0.5 * kPi) f[mesh.node(k, j)] = 1.0;
    }
  return f;
}

int nearest_node(const PolarMesh& mesh, double radius, double angle) {
  int best_k = 0;
  for (int k = 1; k < mesh.rings(); ++k)
    if (std::abs(std::log(mesh.radius(k) / radius)) < std::abs(std::log(mesh.radius(best_k) / radius)))
      best_k = k;
  double a = std::fmod(angle, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  const int j = std::min(mesh.sectors() - 1, static_cast<int>(a / mesh.dtheta()));
  return mesh.node(best_k, j);
}

// Distance of an angle in [-pi, pi) to the closed odd-cone arcs.
double distance_to_odd_arcs(const WeightSpec& w, double angle) {
  const double width = w.cone_angle();
  double t = std::fmod(angle, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  const int c = cone_of_angle(w, t);
  if (c % 2 == 1) return 0.0;
  const double local = t - (c - 1) * width;
  return std::min(local, width - local);
}

std::vector<int> singleton(int node) { return {node}; }

// ---------------------------------------------------------------------------

Report check_assumptions_exp(const Config& cfg) {
  Report r;
  r.experiment = "check-assumptions";
  const std::vector<double> eps = cfg.list("check.epsilons");
  const AssumptionReport a =
      check_assumptions(cfg.profile(), cfg.integer("check.quadrature_points"), eps, cfg.positive("check.bound"));
  r.header = {"eps", "onerank_value"};
  for (std::size_t i = 0; i < a.epsilons.size(); ++i) r.rows.push_back({a.epsilons[i], a.onerank_values[i]});
  r.results = {{"integral_a_over_r", a.integral_a_over_r},
               {"integral_r_over_a", a.integral_r_over_a},
               {"onerank_sup", a.onerank_sup},
               {"bound", a.bound}};
  r.check(std::isfinite(a.integral_a_over_r), "integral of a/r over (0,1) diverges");
  r.check(std::isfinite(a.integral_r_over_a), "integral of r/a over (0,1) diverges");
  r.check(a.passed, "one-rank expression not bounded by the configured bound");
  return r;
}

Report capacity_exp(const Config& cfg) {
  Report r;
  r.experiment = "capacity";
  const WeightSpec w = cfg.weight();
  const double alpha = cfg.positive("alpha");
  const SolverOptions opts = cfg.solver();
  const std::vector<double> ladder = cfg.list("ladder.r_min");
  r.header = {"level", "r_min", "rings", "cap_glued", "cap_split_both", "cap_split_plus", "cap_split_minus"};

  std::vector<double> caps;
  double gluing = 0.0;
  double inner_symmetry = 0.0;
  for (std::size_t lvl = 0; lvl < ladder.size(); ++lvl) {
    const MeshParams p = with_r_min(cfg.mesh(), w, ladder[lvl]);
    const FormMatrices g = build(w, p, OriginMode::Glued);
    const double cap = capacity(g, singleton(g.topology.origin_nodes[0]), alpha, opts).value;
    caps.push_back(cap);
    double both = kNaN, plus = kNaN, minus = kNaN;
    if (!w.is_regular()) {
      const FormMatrices s = build(w, p, OriginMode::Split);
      const auto& o = s.topology.origin_nodes;
      both = capacity(s, o, alpha, opts).value;
      plus = capacity(s, singleton(o[0]), alpha, opts).value;
      minus = capacity(s, singleton(o[1]), alpha, opts).value;
      gluing = std::max(gluing, std::abs(both - cap));
      inner_symmetry = std::max(inner_symmetry, std::abs(plus - minus));
    }
    r.rows.push_back({static_cast<long long>(lvl), ladder[lvl], static_cast<long long>(g.mesh.rings()), cap, both,
                      plus, minus});
  }
  r.results["capacities"] = caps;

  if (caps.size() >= 2) {
    const std::size_t n = caps.size();
    if (!w.is_regular()) {
      const double change = std::abs(caps[n - 1] - caps[n - 2]) / std::abs(caps[n - 2]);
      r.results["last_level_change"] = change;
      r.check(change < 0.05, "capacity of the origin changes by >= 5% between the last two levels");
      r.check(caps[n - 1] > 0.1 * caps[0], "capacity of the origin fell below 10% of its coarsest value");
      r.residuals["gluing_abs"] = gluing;
      r.residuals["inner_symmetry_abs"] = inner_symmetry;
      r.check(gluing <= 1e-12 * std::max(1.0, caps.back()), "glued and split capacities differ");
      r.check(inner_symmetry <= 1e-12 * std::max(1.0, caps.back()), "cap(0+) != cap(0-)");
    } else {
      std::vector<double> falls;
      for (std::size_t i = 1; i < n; ++i) {
        falls.push_back(1.0 - caps[i] / caps[i - 1]);
        r.check(falls.back() > 0.4, "capacity fell by <= 40% at level " + std::to_string(i));
      }
      r.results["falls"] = falls;
      // 1/cap against log(1/r_min): slope and worst relative deviation from the line through the ends.
      const double x0 = std::log(1.0 / ladder.front());
      const double x1 = std::log(1.0 / ladder.back());
      const double slope = (1.0 / caps.back() - 1.0 / caps.front()) / (x1 - x0);
      double dev = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double fit = 1.0 / caps.front() + slope * (std::log(1.0 / ladder[i]) - x0);
        dev = std::max(dev, std::abs(fit * caps[i] - 1.0));
      }
      r.results["inverse_cap_log_slope"] = slope;
      r.results["inverse_cap_log_fit_max_rel_dev"] = dev;
    }
  }
  return r;
}

Report cones_exp(const Config& cfg) {
  Report r;
  r.experiment = "cones";
  const WeightSpec w = cfg.weight();
  const FormMatrices g = build(w, cfg.mesh(), OriginMode::Glued);
  const double delta = cfg.positive("cones.delta");
  const double alpha = cfg.positive("alpha");
  r.header = {"eps", "delta", "cap_plus", "cap_minus", "bound", "ratio", "nodes_plus"};
  std::vector<double> ratios;
  double sym = 0.0;
  double prev = kNaN;
  bool monotone = true;
  for (double eps : cfg.list("cones.eps")) {
    const ConeCapacityReport c = cone_capacity_report(g, eps, delta, alpha, cfg.solver());
    const double ratio = c.cap_plus / c.bound;
    ratios.push_back(ratio);
    sym = std::max(sym, rel_diff(c.cap_plus, c.cap_minus));
    if (std::isfinite(prev) && c.cap_plus >= prev) monotone = false;
    prev = c.cap_plus;
    r.rows.push_back({eps, delta, c.cap_plus, c.cap_minus, c.bound, ratio, static_cast<long long>(c.nodes_plus)});
  }
  const double spread = *std::max_element(ratios.begin(), ratios.end()) /
                        *std::min_element(ratios.begin(), ratios.end());
  r.results["ratio_spread"] = spread;
  r.results["fitted_constant"] = *std::max_element(ratios.begin(), ratios.end());
  r.residuals["plus_minus_rel"] = sym;
  r.check(std::isfinite(spread) && spread < 3.0, "cap/bound ratio spread >= 3 across the eps ladder");
  r.check(sym <= 1e-12, "cap(A+) != cap(A-)");
  r.check(monotone, "cap(A+) does not decrease as eps decreases");
  return r;
}

Report one_point_exp(const Config& cfg) {
  Report r;
  r.experiment = "one-point";
  const WeightSpec w = cfg.weight();
  const FormMatrices g = build(w, cfg.mesh(), OriginMode::Glued);
  const FormMatrices k = build(w, cfg.mesh(), OriginMode::Killed);
  const SolverOptions opts = cfg.solver();
  const auto seed = static_cast<std::uint64_t>(cfg.num("mc.seed"));
  const int samples = cfg.integer("samples");
  const int nm = g.topology.mesh_nodes;
  r.header = {"alpha", "case", "sample", "residual_linf", "g_at_origin", "formula_value"};
  double worst = 0.0;
  double ones = 0.0;
  for (double alpha : cfg.list("alphas")) {
    auto record = [&](const std::string& name, long long s, const MeshFunction& f) {
      const OnePointCheck c = verify_one_point(g, k, alpha, f, opts);
      worst = std::max(worst, c.residual_linf);
      r.rows.push_back({alpha, name, s, c.residual_linf, c.g_at_origin, c.formula_value});
      return c;
    };
    const OnePointCheck c1 = record("ones", 0, MeshFunction::Ones(nm));
    ones = std::max(ones, rel_diff(c1.formula_value, 1.0 / alpha));
    record("q1_annulus", 0, q1_annulus(g.mesh));
    for (int s = 0; s < samples; ++s) record("random", s, random_function(nm, seed, s));
  }
  r.residuals["residual_linf_max"] = worst;
  r.residuals["ones_formula_rel"] = ones;
  r.check(worst < 1e-8, "one-point representation residual >= 1e-8");
  r.check(ones < 1e-12, "formula value for f = 1 differs from 1/alpha");
  return r;
}

Report two_point_exp(const Config& cfg) {
  Report r;
  r.experiment = "two-point";
  const WeightSpec w = cfg.weight();
  const FormMatrices s = build(w, cfg.mesh(), OriginMode::Split);
  const FormMatrices k = build(w, cfg.mesh(), OriginMode::Killed);
  const SolverOptions opts = cfg.solver();
  const auto seed = static_cast<std::uint64_t>(cfg.num("mc.seed"));
  const int samples = cfg.integer("samples");
  const int nm = s.topology.mesh_nodes;
  r.header = {"alpha",           "case",           "sample",          "phi0_plus_formula", "phi0_minus_formula",
              "phi0_plus_direct", "phi0_minus_direct", "origin_rel_diff", "residual_linf"};
  double worst_rel = 0.0;
  double worst_res = 0.0;
  double ones = 0.0;
  bool q1_order = true;
  for (double alpha : cfg.list("alphas")) {
    auto record = [&](const std::string& name, long long i, const MeshFunction& gfun) {
      const TwoPointCheck c = verify_two_point(s, k, alpha, gfun, opts);
      worst_rel = std::max(worst_rel, c.origin_rel_diff);
      worst_res = std::max(worst_res, c.residual_linf);
      r.rows.push_back({alpha, name, i, c.phi0_plus_formula, c.phi0_minus_formula, c.phi0_plus_direct,
                        c.phi0_minus_direct, c.origin_rel_diff, c.residual_linf});
      return c;
    };
    const TwoPointCheck c1 = record("ones", 0, MeshFunction::Ones(nm));
    for (double v : {c1.phi0_plus_formula, c1.phi0_minus_formula, c1.phi0_plus_direct, c1.phi0_minus_direct})
      ones = std::max(ones, rel_diff(v, 1.0 / alpha));
    const TwoPointCheck cq = record("q1_annulus", 0, q1_annulus(s.mesh));
    if (!(cq.phi0_plus_direct > cq.phi0_minus_direct)) q1_order = false;
    for (int i = 0; i < samples; ++i) record("random", i, random_function(nm, seed, i));
  }
  r.residuals["origin_rel_diff_max"] = worst_rel;
  r.residuals["residual_linf_max"] = worst_res;
  r.residuals["ones_rel"] = ones;
  r.check(worst_rel < 1e-8, "phi(0+-) formula and direct resolvent differ by >= 1e-8 (relative)");
  r.check(worst_res < 1e-8, "two-point representation residual >= 1e-8");
  r.check(ones < 1e-10, "g = 1 does not give phi(0+-) = 1/alpha");
  r.check(q1_order, "g supported in Q1 does not favour 0+");
  return r;
}

Report hitting_mc_exp(const Config& cfg) {
  Report r;
  r.experiment = "hitting-mc";
  const WeightSpec w = cfg.weight();
  const FormMatrices s = build(w, cfg.mesh(), OriginMode::Split);
  const PolarMesh& mesh = s.mesh;
  const HittingPair phi = hitting_probs_split(s, cfg.solver());

  double sum_err = 0.0;
  double sym_err = 0.0;
  for (int kk = 0; kk < mesh.rings(); ++kk)
    for (int j = 0; j < mesh.sectors(); ++j) {
      const int a = mesh.node(kk, j);
      const int b = mesh.node(kk, mesh.opposite_sector(j));
      sum_err = std::max(sum_err, std::abs(phi.phi_plus[a] + phi.phi_minus[a] - 1.0));
      sym_err = std::max(sym_err, std::abs(phi.phi_plus[a] - phi.phi_minus[b]));
    }
  r.residuals["phi_sum_linf"] = sum_err;
  r.residuals["phi_symmetry_linf"] = sym_err;
  r.check(sum_err <= 1e-12, "phi_plus + phi_minus != 1");
  r.check(sym_err <= 1e-12, "phi_plus(x) != phi_minus(-x)");

  WalkConfig wc;
  wc.start = nearest_node(mesh, cfg.positive("mc.start_radius"), cfg.num("mc.start_angle"));
  wc.paths = cfg.integer("mc.paths");
  wc.seed = static_cast<std::uint64_t>(cfg.num("mc.seed"));
  wc.max_steps = cfg.integer("mc.max_steps");
  wc.r_lo = cfg.positive("mc.annulus_lo");
  wc.r_hi = cfg.positive("mc.annulus_hi");
  const std::vector<HitRecord> recs = walk_sample(s, wc);
  long long plus = 0, timeouts = 0;
  for (const HitRecord& h : recs) {
    if (h.timed_out()) ++timeouts;
    else if (h.absorbed_at == s.topology.origin_nodes[0]) ++plus;
  }
  const double p_hat = static_cast<double>(plus) / wc.paths;
  const double p = phi.phi_plus[wc.start];
  const double se = std::sqrt(p * (1.0 - p) / wc.paths);
  r.results["start_node"] = wc.start;
  r.results["phi_plus_start"] = p;
  r.results["empirical_plus"] = p_hat;
  r.results["binomial_se"] = se;
  r.results["timeouts"] = timeouts;
  r.check(std::abs(p_hat - p) <= 3.0 * se, "empirical P(0+) more than 3 standard errors from phi_plus");

  WalkConfig rc = wc;
  rc.paths = cfg.integer("mc.return_paths");
  rc.max_steps = cfg.integer("mc.return_steps");
  const ReturnSideStats rs = return_side_stats(s, rc);
  const FormMatrices g = build(w, cfg.mesh(), OriginMode::Glued);
  const ReturnSideStats rg = return_side_stats(g, rc);
  const long long n13 = rg.plus_next[0] + rg.plus_next[2];
  const double q1 = n13 > 0 ? static_cast<double>(rg.plus_next[0]) / n13 : kNaN;
  const double q1_se = std::sqrt(0.25 / std::max<long long>(1, n13));
  r.results["split_visits_plus"] = rs.visits_plus;
  r.results["split_visits_minus"] = rs.visits_minus;
  r.results["from_plus_into_Q1"] = rs.from_plus_into_Q1;
  r.results["from_minus_into_Q3"] = rs.from_minus_into_Q3;
  r.results["glued_visits"] = rg.visits_plus;
  r.results["glued_next_Q1_fraction"] = q1;
  r.check(rs.from_plus_into_Q1 == 1.0, "a walk left 0+ into a quadrant other than Q1");
  r.check(rs.from_minus_into_Q3 == 1.0, "a walk left 0- into a quadrant other than Q3");
  r.check(rg.visits_plus >= 10000, "fewer than 1e4 visits to the glued origin");
  r.check(std::abs(q1 - 0.5) <= 3.0 * q1_se, "glued origin exits are not balanced between Q1 and Q3");

  r.header = {"quantity", "value"};
  r.rows = {{std::string("phi_plus_start"), p},
            {std::string("empirical_plus"), p_hat},
            {std::string("from_plus_into_Q1"), rs.from_plus_into_Q1},
            {std::string("from_minus_into_Q3"), rs.from_minus_into_Q3},
            {std::string("glued_next_Q1_fraction"), q1}};
  return r;
}

Report approach_angle_exp(const Config& cfg) {
  Report r;
  r.experiment = "approach-angle";
  const WeightSpec w = cfg.weight();
  OriginMode mode = cfg.mode();
  if (mode == OriginMode::Killed) throw ConfigurationError("approach-angle needs topology.mode glued or split");
  const FormMatrices f = build(w, cfg.mesh(), mode);
  const PolarMesh& mesh = f.mesh;
  const int start = nearest_node(mesh, cfg.positive("mc.start_radius"), cfg.num("mc.start_angle"));
  const HarmonicMeasure hm = harmonic_measure_origin(f, start, cfg.solver());
  r.header = {"sector", "angle", "cone", "conductance", "mass"};
  for (const OriginEdgeMass& e : hm.edges)
    r.rows.push_back({static_cast<long long>(e.sector), mesh.sector_angle(e.sector), static_cast<long long>(e.cone),
                      e.conductance, e.mass});
  r.results["odd_mass"] = hm.odd_mass;
  r.results["even_mass"] = hm.even_mass;

  WalkConfig wc;
  wc.start = start;
  wc.paths = cfg.integer("mc.paths");
  wc.seed = static_cast<std::uint64_t>(cfg.num("mc.seed"));
  wc.max_steps = cfg.integer("mc.max_steps");
  wc.r_lo = cfg.positive("mc.annulus_lo");
  wc.r_hi = cfg.positive("mc.annulus_hi");
  const std::vector<HitRecord> recs = walk_sample(f, wc);
  long long near = 0, counted = 0, timeouts = 0;
  for (const HitRecord& h : recs) {
    if (h.timed_out()) {
      ++timeouts;
      continue;
    }
    if (!std::isfinite(h.last_annulus_angle)) continue;
    ++counted;
    if (distance_to_odd_arcs(w, h.last_annulus_angle) <= 2.0 * mesh.dtheta() + 1e-12) ++near;
  }
  const double frac = counted > 0 ? static_cast<double>(near) / counted : kNaN;
  r.results["mc_paths_counted"] = counted;
  r.results["mc_timeouts"] = timeouts;
  r.results["mc_fraction_near_odd_arcs"] = frac;
  r.check(hm.even_mass == 0.0, "harmonic measure charges even-cone origin links");
  r.check(frac >= 0.99, "fewer than 99% of last-annulus angles lie within 2 dtheta of the odd arcs");
  return r;
}

Report bessel_exp(const Config& cfg) {
  Report r;
  r.experiment = "bessel";
  const double alpha = cfg.positive("bessel.alpha");
  r.header = {"delta", "kappa", "estimate", "std_err", "analytic", "z", "aborted", "unfinished"};
  nlohmann::json z = nlohmann::json::object();
  for (double delta : {2.0 - alpha, 2.0 + alpha}) {
    BesselConfig bc;
    bc.delta = delta;
    bc.r0 = cfg.positive("bessel.r0");
    bc.a = cfg.positive("bessel.a");
    bc.b = cfg.positive("bessel.b");
    bc.dt = cfg.positive("bessel.dt");
    bc.paths = cfg.integer("bessel.paths");
    bc.seed = static_cast<std::uint64_t>(cfg.num("mc.seed"));
    bc.bridge_correction = cfg.flag("bessel.bridge");
    bc.reflect_at_b = cfg.flag("bessel.reflect");
    const BesselEstimate e = bessel_hit_estimate(bc);
    const double zz = e.std_err > 0.0 ? (e.estimate - e.analytic) / e.std_err : (e.estimate == e.analytic ? 0.0 : kNaN);
    r.rows.push_back({delta, 2.0 - delta, e.estimate, e.std_err, e.analytic, zz, static_cast<long long>(e.aborted),
                      static_cast<long long>(e.unfinished)});
    z["delta_" + std::to_string(delta)] = zz;
    if (!bc.reflect_at_b)
      r.check(std::abs(e.estimate - e.analytic) <= 3.0 * e.std_err,
              "Bessel estimate is more than 3 standard errors off (delta = " + std::to_string(delta) + ")");
  }
  r.residuals["z_scores"] = z;
  return r;
}

Report trace_exp(const Config& cfg) {
  Report r;
  r.experiment = "trace";
  const WeightSpec w = cfg.weight();
  OriginMode mode = cfg.mode();
  if (mode == OriginMode::Killed || (mode == OriginMode::Split && w.is_regular())) mode = OriginMode::Glued;
  const PolarMesh mesh = PolarMesh::build(cfg.mesh(), w);
  const Topology topo = build_topology(mesh, w, mode);
  const JumpFunction psi = psi0_grid(mesh, topo);
  const double tp = trace_plus(psi.values, mesh);
  const double tm = trace_minus(psi.values, mesh);
  const double expect = 1.0 - mesh.r_min() * mesh.r_min();
  r.results["topology"] = to_string(mode);
  r.results["trace_plus_psi0"] = tp;
  r.results["trace_minus_psi0"] = tm;
  r.results["expected_trace_plus"] = expect;
  r.residuals["trace_plus_abs"] = std::abs(tp - expect);
  r.check(std::abs(tp - expect) <= 1e-12, "trace_plus(psi0) != 1 - r_min^2");
  r.check(tm == 0.0, "trace_minus(psi0) != 0");

  const auto seed = static_cast<std::uint64_t>(cfg.num("mc.seed"));
  r.header = {"sample", "lambda", "gap_before", "gap_after"};
  double worst = 0.0;
  for (int s = 0; s < cfg.integer("samples"); ++s) {
    const MeshFunction u = random_function(topo.node_count(), seed, s);
    const Decomposition d = decompose(u, mesh, topo);
    const double before = trace_plus(u, mesh) - trace_minus(u, mesh);
    const double after = trace_plus(d.v, mesh) - trace_minus(d.v, mesh);
    worst = std::max(worst, std::abs(after));
    r.rows.push_back({static_cast<long long>(s), d.lambda, before, after});
  }
  r.residuals["decompose_gap_max"] = worst;
  r.check(worst <= 1e-12, "decompose leaves a trace gap above 1e-12");
  return r;
}

Report dist_exp(const Config& cfg) {
  Report r;
  r.experiment = "dist";
  const WeightSpec w = cfg.weight();
  const double alpha = cfg.positive("alpha");
  r.header = {"level", "r_min", "rings", "dist_to_glued", "energy_psi0"};
  std::vector<double> dist;
  for (double rm : cfg.list("ladder.r_min")) {
    const MeshParams p = with_r_min(cfg.mesh(), w, rm);
    const FormMatrices s = build(w, p, OriginMode::Split);
    const MeshFunction psi = psi0_grid(s.mesh, s.topology).values;
    dist.push_back(dist_to_glued(psi, s, alpha, cfg.solver()));
    r.rows.push_back({static_cast<long long>(dist.size() - 1), rm, static_cast<long long>(s.mesh.rings()),
                      dist.back(), e1(s, psi, psi, alpha)});
  }
  r.results["dist"] = dist;
  for (std::size_t i = 1; i < dist.size(); ++i)
    r.check(dist[i] > 0.5 * dist[0], "dist_to_glued fell below half its coarsest value at level " + std::to_string(i));
  r.check(dist[0] > 0.0, "dist_to_glued is not positive");
  return r;
}

const std::map<std::string, std::function<Report(const Config&)>>& registry() {
  static const std::map<std::string, std::function<Report(const Config&)>> r = {
      {"check-assumptions", check_assumptions_exp},
      {"capacity", capacity_exp},
      {"cones", cones_exp},
      {"one-point", one_point_exp},
      {"two-point", two_point_exp},
      {"hitting-mc", hitting_mc_exp},
      {"approach-angle", approach_angle_exp},
      {"bessel", bessel_exp},
      {"trace", trace_exp},
      {"dist", dist_exp},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"check-assumptions", "capacity",       "cones",  "one-point",
                                                 "two-point",         "hitting-mc",     "approach-angle",
                                                 "bessel",            "trace",          "dist"};
  return names;
}

Report run_experiment(const std::string& name, const Config& cfg) {
  const auto& reg = registry();
  const auto it = reg.find(name);
  if (it == reg.end()) throw ConfigurationError("unknown experiment '" + name + "'");
  return it->second(cfg);
}

}  // namespace sdl::runner

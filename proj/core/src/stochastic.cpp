#include "sdl/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "sdl/errors.hpp"
#include "sdl/parallel.hpp"

namespace sdl {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Jump chain in CSR form: neighbours of i with cumulative conductances.
struct Chain {
  std::vector<int> start;
  std::vector<int> target;
  std::vector<double> cumulative;

  explicit Chain(const FormMatrices& f) {
    const int n = f.node_count();
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const Edge& e : f.edges) {
      adj[e.a].emplace_back(e.b, e.conductance);
      adj[e.b].emplace_back(e.a, e.conductance);
    }
    start.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
      // Fixed neighbour order keeps sampling independent of edge insertion order.
      std::sort(adj[i].begin(), adj[i].end());
      start[i + 1] = start[i] + static_cast<int>(adj[i].size());
      double acc = 0.0;
      for (const auto& [j, c] : adj[i]) {
        acc += c;
        target.push_back(j);
        cumulative.push_back(acc);
      }
    }
  }

  int step(int i, std::mt19937_64& rng) const {
    const auto lo = cumulative.begin() + start[i];
    const auto hi = cumulative.begin() + start[i + 1];
    const double u = uniform01(rng) * *(hi - 1);
    auto it = std::upper_bound(lo, hi, u);
    if (it == hi) --it;
    return target[static_cast<std::size_t>(it - cumulative.begin())];
  }
};

void validate_walk(const FormMatrices& f, const WalkConfig& cfg) {
  if (f.topology.mode == OriginMode::Killed)
    throw ConfigurationError("walk: needs a glued or split topology (origin nodes are the targets)");
  if (cfg.paths < 1) throw ConfigurationError("walk: paths must be >= 1");
  if (cfg.max_steps < 1) throw ConfigurationError("walk: max_steps must be >= 1");
  if (cfg.start < 0 || cfg.start >= f.topology.mesh_nodes)
    throw DomainError("walk: start must be a mesh node");
}

int quadrant_of(const PolarMesh& mesh, int node) {
  const double t = mesh.sector_angle(mesh.sector_of(node));
  return std::min(3, static_cast<int>(t / (0.5 * kPi)));
}

}  // namespace

std::vector<HitRecord> walk_sample(const FormMatrices& f, const WalkConfig& cfg) {
  validate_walk(f, cfg);
  const PolarMesh& mesh = f.mesh;
  if (!(cfg.r_lo < cfg.r_hi) || cfg.r_lo < mesh.r_min() * (1.0 - 1e-12) ||
      cfg.r_hi > mesh.outer_radius() * (1.0 + 1e-12))
    throw ConfigurationError("walk: annulus must satisfy r_min <= r_lo < r_hi <= R");

  const Chain chain(f);
  const int nm = f.topology.mesh_nodes;
  std::vector<char> in_annulus(f.node_count(), 0);
  for (int i = 0; i < nm; ++i) {
    const double r = mesh.radius(mesh.ring_of(i));
    in_annulus[i] = r >= cfg.r_lo && r <= cfg.r_hi;
  }

  std::vector<HitRecord> out(cfg.paths);
  parallel_for(cfg.paths, cfg.threads, [&](std::int64_t p) {
    std::mt19937_64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(p)));
    HitRecord rec;
    rec.last_annulus_angle = kNaN;
    int node = cfg.start;
    for (std::int64_t s = 0; s < cfg.max_steps; ++s) {
      const int next = chain.step(node, rng);
      if (in_annulus[node] && !in_annulus[next])
        rec.last_annulus_angle = mesh.sector_angle_signed(mesh.sector_of(node));
      node = next;
      rec.steps = s + 1;
      if (f.topology.is_origin(node)) {
        rec.absorbed_at = node;
        break;
      }
    }
    out[p] = rec;
  });
  return out;
}

ReturnSideStats return_side_stats(const FormMatrices& f, const WalkConfig& cfg) {
  validate_walk(f, cfg);
  const Chain chain(f);
  const PolarMesh& mesh = f.mesh;
  const bool two = f.topology.origin_nodes.size() >= 2;

  struct Counts {
    std::int64_t plus[4] = {0, 0, 0, 0};
    std::int64_t minus[4] = {0, 0, 0, 0};
  };
  std::vector<Counts> per_path(cfg.paths);
  parallel_for(cfg.paths, cfg.threads, [&](std::int64_t p) {
    std::mt19937_64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(p)));
    Counts c;
    int node = cfg.start;
    for (std::int64_t s = 0; s < cfg.max_steps; ++s) {
      const int next = chain.step(node, rng);
      if (f.topology.is_origin(node)) {
        const int slot = f.topology.origin_slot(node);
        // Origin nodes only link to mesh nodes.
        if (slot == 0) ++c.plus[quadrant_of(mesh, next)];
        else if (slot == 1) ++c.minus[quadrant_of(mesh, next)];
      }
      node = next;
    }
    per_path[p] = c;
  });

  ReturnSideStats st;
  for (const Counts& c : per_path)
    for (int q = 0; q < 4; ++q) {
      st.plus_next[q] += c.plus[q];
      st.minus_next[q] += c.minus[q];
    }
  for (int q = 0; q < 4; ++q) {
    st.visits_plus += st.plus_next[q];
    st.visits_minus += st.minus_next[q];
  }
  if (st.visits_plus == 0 || (two && st.visits_minus == 0))
    throw InsufficientDataError("return_side_stats: an origin node was never visited within max_steps");
  st.from_plus_into_Q1 = static_cast<double>(st.plus_next[0]) / static_cast<double>(st.visits_plus);
  st.from_minus_into_Q3 =
      two ? static_cast<double>(st.minus_next[2]) / static_cast<double>(st.visits_minus) : kNaN;
  return st;
}

double bessel_analytic(double delta, double r0, double a, double b) {
  const double kappa = 2.0 - delta;
  if (std::abs(kappa) < 1e-12) return std::log(r0 / b) / std::log(a / b);
  return (std::pow(r0, kappa) - std::pow(b, kappa)) / (std::pow(a, kappa) - std::pow(b, kappa));
}

BesselEstimate bessel_hit_estimate(const BesselConfig& cfg) {
  if (!(cfg.a > 0.0 && cfg.a <= cfg.r0 && cfg.r0 <= cfg.b && cfg.a < cfg.b))
    throw ConfigurationError("bessel: need 0 < a <= r0 <= b");
  if (!(cfg.dt > 0.0) || cfg.dt > cfg.a * cfg.a / 10.0 * (1.0 + 1e-9))
    throw ConfigurationError("bessel: need 0 < dt <= a^2/10");
  if (cfg.paths < 1) throw ConfigurationError("bessel: paths must be >= 1");

  enum : char { kMissA = 0, kHitA = 1, kAborted = 2, kUnfinished = 3 };
  const double drift = cfg.delta - 1.0;
  const double dt_min = cfg.dt / 1024.0;
  const auto max_steps = static_cast<std::int64_t>(std::ceil(cfg.max_time / cfg.dt));

  std::vector<char> outcome(cfg.paths, kMissA);
  parallel_for(cfg.paths, cfg.threads, [&](std::int64_t p) {
    std::mt19937_64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(p)));
    boost::random::normal_distribution<double> normal;
    double r = cfg.r0;
    if (r <= cfg.a) {
      outcome[p] = kHitA;
      return;
    }
    if (r >= cfg.b && !cfg.reflect_at_b) return;
    for (std::int64_t s = 0; s < max_steps; ++s) {
      double h = cfg.dt;
      double rn = r + drift / r * h + std::sqrt(2.0 * h) * normal(rng);
      while (rn <= 0.0 && h > dt_min) {
        h *= 0.5;
        rn = r + drift / r * h + std::sqrt(2.0 * h) * normal(rng);
      }
      if (rn <= 0.0) {
        outcome[p] = kAborted;
        return;
      }
      if (rn <= cfg.a) {
        outcome[p] = kHitA;
        return;
      }
      if (rn >= cfg.b) {
        if (!cfg.reflect_at_b) return;
        rn = 2.0 * cfg.b - rn;
      }
      if (cfg.bridge_correction) {
        // Diffusion coefficient 2: P(bridge dips below a) = exp(-(r - a)(rn - a)/h).
        const double da = (r - cfg.a) * (rn - cfg.a);
        if (da < 40.0 * h && uniform01(rng) < std::exp(-da / h)) {
          outcome[p] = kHitA;
          return;
        }
        if (!cfg.reflect_at_b) {
          const double db = (cfg.b - r) * (cfg.b - rn);
          if (db < 40.0 * h && uniform01(rng) < std::exp(-db / h)) return;
        }
      }
      r = rn;
    }
    outcome[p] = kUnfinished;
  });

  BesselEstimate est;
  std::int64_t hits = 0;
  for (char o : outcome) {
    if (o == kHitA) ++hits;
    else if (o == kAborted) ++est.aborted;
    else if (o == kUnfinished) ++est.unfinished;
  }
  const std::int64_t n = cfg.paths - est.aborted;
  if (n == 0) throw NumericalError("bessel: every path aborted on step underflow");
  est.estimate = static_cast<double>(hits) / static_cast<double>(n);
  est.std_err = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(n));
  est.analytic = cfg.reflect_at_b ? kNaN : bessel_analytic(cfg.delta, cfg.r0, cfg.a, cfg.b);
  return est;
}

}  // namespace sdl

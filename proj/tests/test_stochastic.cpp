#include <doctest.h>

#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "sdl/errors.hpp"
#include "sdl/parallel.hpp"
#include "sdl/potential.hpp"
#include "sdl/stochastic.hpp"

using namespace sdl;

namespace {

WeightSpec power1() { return WeightSpec::two_quadrant(RadialProfile::power(1)); }

const MeshParams kSmall{12, 16, 1e-2, 2.0, 1.7};
const MeshParams kDefault{32, 32, 1e-3, 2.0, 1.35};

FormMatrices make(const WeightSpec& w, OriginMode mode, const MeshParams& p = kSmall) {
  const PolarMesh m = PolarMesh::build(p, w);
  return assemble(m, build_topology(m, w, mode), w);
}

WalkConfig walk_cfg(const FormMatrices& f, int start, int paths) {
  WalkConfig c;
  c.start = start;
  c.paths = paths;
  c.r_lo = f.mesh.r_min();
  c.r_hi = f.mesh.outer_radius();
  c.seed = 77;
  return c;
}

}  // namespace

TEST_SUITE("stochastic") {

TEST_CASE("parallel_for visits every index once") {
  for (int workers : {1, 3, 8}) {
    std::vector<int> hits(1001, 0);
    parallel_for(1001, workers, [&](std::int64_t i) { ++hits[i]; });
    for (int h : hits) CHECK(h == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::int64_t i) { if (i == 7) throw std::runtime_error("x"); }),
                  std::runtime_error);
  CHECK(worker_count() >= 1);
}

TEST_CASE("stream seeds are distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t p = 0; p < 10000; ++p) seen.insert(stream_seed(1, p));
  CHECK(seen.size() == 10000);
  CHECK(stream_seed(1, 0) != stream_seed(2, 0));
  CHECK(mix64(0) != mix64(1));
}

TEST_CASE("walk absorption frequency matches the hitting probability") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  const int start = f.mesh.node(3, 1);
  const double phi = hitting_probs_split(f).phi_plus[start];
  const std::vector<HitRecord> rec = walk_sample(f, walk_cfg(f, start, 4000));
  int plus = 0, done = 0;
  for (const HitRecord& r : rec) {
    if (r.timed_out()) continue;
    ++done;
    if (r.absorbed_at == f.topology.origin_nodes[0]) ++plus;
    else CHECK(r.absorbed_at == f.topology.origin_nodes[1]);
  }
  REQUIRE(done == 4000);
  const double p = static_cast<double>(plus) / done;
  const double se = std::sqrt(phi * (1 - phi) / done);
  CHECK(std::abs(p - phi) < 3.0 * se);
}

TEST_CASE("walk timeouts shrink with the step budget") {
  const FormMatrices f = make(power1(), OriginMode::Glued);
  WalkConfig c = walk_cfg(f, f.mesh.node(11, 5), 500);
  c.max_steps = 3;
  int timeouts = 0;
  for (const HitRecord& r : walk_sample(f, c)) timeouts += r.timed_out();
  CHECK(timeouts == 500);
  c.max_steps = 1'000'000;
  for (const HitRecord& r : walk_sample(f, c)) {
    CHECK_FALSE(r.timed_out());
    CHECK(r.absorbed_at == f.topology.origin_nodes[0]);
    CHECK(r.steps >= 12);
  }
}

TEST_CASE("walks are reproducible across thread counts") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  WalkConfig c = walk_cfg(f, f.mesh.node(6, 9), 300);
  c.r_lo = 0.02;
  c.r_hi = 0.1;
  c.threads = 1;
  const std::vector<HitRecord> a = walk_sample(f, c);
  c.threads = 3;
  const std::vector<HitRecord> b = walk_sample(f, c);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].absorbed_at == b[i].absorbed_at);
    CHECK(a[i].steps == b[i].steps);
    CHECK((a[i].last_annulus_angle == b[i].last_annulus_angle ||
           (std::isnan(a[i].last_annulus_angle) && std::isnan(b[i].last_annulus_angle))));
  }
  c.seed = 78;
  const std::vector<HitRecord> d = walk_sample(f, c);
  int same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i].steps == d[i].steps;
  CHECK(same < 300);
}

TEST_CASE("walks reach the origin through odd cones") {
  const FormMatrices f = make(power1(), OriginMode::Glued, kDefault);
  WalkConfig c = walk_cfg(f, f.mesh.node(20, 7), 1000);
  c.r_lo = 0.002;
  c.r_hi = 0.01;
  int odd = 0, seen = 0;
  for (const HitRecord& r : walk_sample(f, c)) {
    REQUIRE_FALSE(r.timed_out());
    if (std::isnan(r.last_annulus_angle)) continue;
    ++seen;
    const double t = r.last_annulus_angle;
    odd += (t > 0 && t < kPi / 2) || (t < -kPi / 2);
  }
  REQUIRE(seen > 900);
  CHECK(static_cast<double>(odd) / seen >= 0.99);
}

TEST_CASE("walk argument checks") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  CHECK_THROWS_AS(walk_sample(make(power1(), OriginMode::Killed), walk_cfg(f, 0, 1)), ConfigurationError);
  WalkConfig c = walk_cfg(f, f.topology.origin_nodes[0], 1);
  CHECK_THROWS_AS(walk_sample(f, c), DomainError);
  c = walk_cfg(f, 0, 1);
  c.r_lo = 0.5;
  c.r_hi = 0.1;
  CHECK_THROWS_AS(walk_sample(f, c), ConfigurationError);
}

TEST_CASE("split origin points send the walk back into their own quadrant") {
  for (const WeightSpec& w : {power1(), WeightSpec::two_quadrant(RadialProfile::log(2))}) {
    const FormMatrices f = make(w, OriginMode::Split);
    WalkConfig c = walk_cfg(f, f.mesh.node(2, 2), 40);
    c.max_steps = 5000;
    const ReturnSideStats st = return_side_stats(f, c);
    REQUIRE(st.visits_plus > 0);
    REQUIRE(st.visits_minus > 0);
    CHECK(st.from_plus_into_Q1 == 1.0);
    CHECK(st.from_minus_into_Q3 == 1.0);
    CHECK(st.plus_next[1] + st.plus_next[2] + st.plus_next[3] == 0);
  }
}

TEST_CASE("a glued origin sends the walk into Q1 or Q3 evenly") {
  const FormMatrices f = make(power1(), OriginMode::Glued);
  WalkConfig c = walk_cfg(f, f.mesh.node(2, 2), 60);
  c.max_steps = 20000;
  const ReturnSideStats st = return_side_stats(f, c);
  REQUIRE(st.visits_plus >= 10000);
  CHECK(std::isnan(st.from_minus_into_Q3));
  CHECK(st.plus_next[1] == 0);
  CHECK(st.plus_next[3] == 0);
  const double p = st.from_plus_into_Q1;
  CHECK(std::abs(p - 0.5) < 3.0 * std::sqrt(0.25 / static_cast<double>(st.visits_plus)));
}

TEST_CASE("return statistics need visits") {
  const FormMatrices f = make(power1(), OriginMode::Split);
  WalkConfig c = walk_cfg(f, f.mesh.node(11, 0), 1);
  c.max_steps = 1;
  CHECK_THROWS_AS(return_side_stats(f, c), InsufficientDataError);
}

TEST_CASE("Bessel scale function") {
  CHECK(bessel_analytic(1.0, 0.5, 0.01, 1.0) == doctest::Approx(0.5 / 0.99).epsilon(1e-14));
  // delta = 3: (r0^-1 - 1)/(a^-1 - 1)
  CHECK(bessel_analytic(3.0, 0.5, 0.01, 1.0) == doctest::Approx(1.0 / 99.0).epsilon(1e-13));
  CHECK(bessel_analytic(2.0, 0.1, 0.01, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(bessel_analytic(1.5, 0.01, 0.01, 1.0) == doctest::Approx(1.0));
  CHECK(bessel_analytic(1.5, 1.0, 0.01, 1.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("Bessel Monte Carlo against the scale function") {
  for (double delta : {1.0, 3.0}) {
    BesselConfig c;
    c.delta = delta;
    c.r0 = 0.5;
    c.a = 0.1;
    c.b = 1.0;
    c.dt = 1e-3;
    c.paths = 20000;
    c.seed = 11;
    const BesselEstimate e = bessel_hit_estimate(c);
    CHECK(e.aborted == 0);
    CHECK(e.unfinished == 0);
    CHECK(std::abs(e.estimate - e.analytic) < 3.0 * e.std_err);
    c.threads = 1;
    const BesselEstimate e1 = bessel_hit_estimate(c);
    c.threads = 4;
    CHECK(bessel_hit_estimate(c).estimate == e1.estimate);
    CHECK(e1.estimate == e.estimate);
  }
}

TEST_CASE("Bessel argument checks") {
  BesselConfig c;
  c.a = 0.1;
  c.dt = 2e-3;
  CHECK_THROWS_AS(bessel_hit_estimate(c), ConfigurationError);
  c.dt = 1e-3;
  c.r0 = 0.05;
  CHECK_THROWS_AS(bessel_hit_estimate(c), ConfigurationError);
  c.r0 = 0.1;
  c.paths = 50;
  CHECK(bessel_hit_estimate(c).estimate == 1.0);
  c.r0 = 0.5;
  c.reflect_at_b = true;
  c.paths = 200;
  const BesselEstimate e = bessel_hit_estimate(c);
  CHECK(std::isnan(e.analytic));
  CHECK(e.estimate > 0.9);
}

}  // TEST_SUITE

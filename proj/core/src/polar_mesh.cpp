#include "sdl/polar_mesh.hpp"

#include <cmath>

#include "sdl/errors.hpp"

namespace sdl {

int geometric_ring_count(double r_min, double cutoff, double grading) {
  if (!(grading > 1.0)) throw ConfigurationError("mesh grading must be > 1");
  if (!(r_min > 0.0 && r_min < cutoff)) throw ConfigurationError("need 0 < r_min < cutoff radius");
  const double steps = std::log(cutoff / r_min) / std::log(grading);
  return static_cast<int>(std::ceil(steps - 1e-9)) + 1;
}

MeshParams with_r_min(const MeshParams& base, const WeightSpec& w, double r_min) {
  MeshParams p = base;
  const int outer =
      base.outer_radius > w.cutoff_radius
          ? base.rings - geometric_ring_count(base.r_min, w.cutoff_radius, base.grading)
          : 0;
  p.r_min = r_min;
  p.rings = geometric_ring_count(r_min, w.cutoff_radius, base.grading) + outer;
  return p;
}

PolarMesh PolarMesh::build(const MeshParams& params, const WeightSpec& weight) {
  weight.validate();
  if (params.rings < 4) throw ConfigurationError("mesh needs at least 4 rings");
  if (params.sectors < 8) throw ConfigurationError("mesh needs at least 8 sectors");
  const int cones = weight.is_regular() ? 4 : weight.cone_count();
  if (params.sectors % cones != 0)
    throw ConfigurationError("sector count " + std::to_string(params.sectors) +
                             " is not a multiple of the cone count " + std::to_string(cones));
  const double cutoff = weight.cutoff_radius;
  if (params.outer_radius < cutoff) throw ConfigurationError("outer radius must be >= cutoff radius");

  int inner = geometric_ring_count(params.r_min, cutoff, params.grading);
  int outer = 0;
  if (params.outer_radius > cutoff) {
    outer = params.rings - inner;
    if (outer < 1)
      throw ConfigurationError("not enough rings: the graded part alone needs " +
                               std::to_string(inner) + " rings plus one outside the cutoff");
  } else {
    if (params.rings < inner)
      throw ConfigurationError("not enough rings to reach the cutoff with the given grading");
    inner = params.rings;
  }

  PolarMesh mesh;
  mesh.params_ = params;
  mesh.sectors_ = params.sectors;
  mesh.dtheta_ = 2.0 * kPi / params.sectors;
  mesh.radii_.reserve(inner + outer);
  const double ratio_log = std::log(cutoff / params.r_min) / (inner - 1);
  for (int k = 0; k < inner - 1; ++k) mesh.radii_.push_back(params.r_min * std::exp(k * ratio_log));
  mesh.radii_.push_back(cutoff);
  for (int i = 1; i <= outer; ++i)
    mesh.radii_.push_back(cutoff + (params.outer_radius - cutoff) * i / outer);
  return mesh;
}

double PolarMesh::cell_inner(int ring) const {
  return ring == 0 ? radii_.front() : 0.5 * (radii_[ring - 1] + radii_[ring]);
}

double PolarMesh::cell_outer(int ring) const {
  return ring + 1 == rings() ? radii_.back() : 0.5 * (radii_[ring] + radii_[ring + 1]);
}

double PolarMesh::sector_angle_signed(int sector) const {
  const double t = sector_angle(sector);
  return t >= kPi ? t - 2.0 * kPi : t;
}

double PolarMesh::cell_area(int node) const {
  const int k = ring_of(node);
  const double a = cell_inner(k);
  const double b = cell_outer(k);
  return 0.5 * dtheta_ * (b * b - a * a);
}

Vec2 PolarMesh::position(int node) const {
  const double r = radii_[ring_of(node)];
  const double t = sector_angle(sector_of(node));
  return {r * std::cos(t), r * std::sin(t)};
}

std::string to_string(OriginMode mode) {
  switch (mode) {
    case OriginMode::Killed: return "killed";
    case OriginMode::Glued: return "glued";
    case OriginMode::Split: return "split";
  }
  return "?";
}

OriginMode origin_mode_from_string(const std::string& s) {
  if (s == "killed" || s == "Killed") return OriginMode::Killed;
  if (s == "glued" || s == "Glued") return OriginMode::Glued;
  if (s == "split" || s == "Split") return OriginMode::Split;
  throw ConfigurationError("unknown topology mode '" + s + "' (expected killed|glued|split)");
}

Topology build_topology(const PolarMesh& mesh, const WeightSpec& weight, OriginMode mode) {
  Topology t;
  t.mode = mode;
  t.mesh_nodes = mesh.node_count();
  t.arc_assignment.assign(mesh.sectors(), -1);
  t.inner_radius = weight.is_regular() ? mesh.r_min() / mesh.inner_ratio() : 0.0;

  switch (mode) {
    case OriginMode::Killed:
      break;
    case OriginMode::Glued:
      t.origin_nodes.push_back(t.mesh_nodes);
      t.arc_assignment.assign(mesh.sectors(), 0);
      break;
    case OriginMode::Split: {
      if (weight.is_regular())
        throw ConfigurationError("split origin is undefined for a regular weight");
      if (mesh.sectors() % weight.cone_count() != 0)
        throw ConfigurationError("mesh sectors incompatible with the weight's cones");
      for (int i = 0; i < weight.cone_pairs; ++i) t.origin_nodes.push_back(t.mesh_nodes + i);
      for (int j = 0; j < mesh.sectors(); ++j) {
        const int cone = cone_of_angle(weight, mesh.sector_angle(j));
        if (cone % 2 == 1) t.arc_assignment[j] = (cone - 1) / 2;
      }
      break;
    }
  }
  return t;
}

}  // namespace sdl

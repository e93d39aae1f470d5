#pragma once

#include <string>
#include <vector>

#include "sdl/weights.hpp"

namespace sdl {

struct MeshParams {
  int rings = 32;            // K
  int sectors = 32;          // M
  double r_min = 1e-3;       // innermost ring radius
  double outer_radius = 2.0; // R
  double grading = 1.35;     // maximal ratio r_{k+1}/r_k inside the cutoff
};

/// Number of rings the geometric part of a mesh uses between r_min and the
/// cutoff (both included) for a maximal grading ratio q.
int geometric_ring_count(double r_min, double cutoff, double grading);

/// Params with a new r_min, keeping the grading ratio and the number of
/// rings outside the cutoff. Used for refinement ladders toward the origin.
MeshParams with_r_min(const MeshParams& base, const WeightSpec& w, double r_min);

/// Graded polar grid of the disk B(0, R). Nodes sit at (ring k, sector j),
/// numbered ring-major: id = k * M + j. Sector j is centred at (j + 1/2) dtheta.
///
/// Each node owns the vertex-centred cell [cell_inner(k), cell_outer(k)] x
/// sector, with faces halfway between rings; the first cell starts at r_min
/// and the last ends at R, so cells tile the annulus r_min <= r <= R.
class PolarMesh {
 public:
  /// Rings are geometric (constant ratio <= grading) from r_min to the weight's
  /// cutoff radius and uniform from there to R. M must be a multiple of 2N.
  static PolarMesh build(const MeshParams& params, const WeightSpec& weight);

  int rings() const { return static_cast<int>(radii_.size()); }
  int sectors() const { return sectors_; }
  int node_count() const { return rings() * sectors_; }
  int node(int ring, int sector) const { return ring * sectors_ + sector; }
  int ring_of(int node) const { return node / sectors_; }
  int sector_of(int node) const { return node % sectors_; }

  const std::vector<double>& radii() const { return radii_; }
  double radius(int ring) const { return radii_[ring]; }
  double r_min() const { return radii_.front(); }
  double outer_radius() const { return radii_.back(); }
  double dtheta() const { return dtheta_; }
  /// Ratio between the two innermost rings.
  double inner_ratio() const { return radii_[1] / radii_[0]; }

  double cell_inner(int ring) const;
  double cell_outer(int ring) const;

  /// Centre angle of a sector in [0, 2 pi).
  double sector_angle(int sector) const { return (sector + 0.5) * dtheta_; }
  /// Same angle reduced to [-pi, pi).
  double sector_angle_signed(int sector) const;
  /// Sector obtained by rotating by pi (central symmetry).
  int opposite_sector(int sector) const { return (sector + sectors_ / 2) % sectors_; }

  double cell_area(int node) const;
  Vec2 position(int node) const;

  const MeshParams& params() const { return params_; }

 private:
  MeshParams params_{};
  int sectors_ = 0;
  double dtheta_ = 0.0;
  std::vector<double> radii_;
};

enum class OriginMode { Killed, Glued, Split };

std::string to_string(OriginMode mode);
OriginMode origin_mode_from_string(const std::string& s);

/// How the singular point is represented on top of a mesh: removed (Killed),
/// one node (Glued) or one node per odd cone (Split, e.g. 0+ / 0- for the
/// two-quadrant weight).
struct Topology {
  OriginMode mode = OriginMode::Glued;
  int mesh_nodes = 0;
  std::vector<int> origin_nodes;     // node ids, appended after the mesh nodes
  std::vector<int> arc_assignment;   // per innermost sector: index into origin_nodes, or -1
  /// Radius of the disk the origin node stands for. 0 for singular weights;
  /// r_min / q for regular weights, where a single point carries no capacity.
  double inner_radius = 0.0;

  int node_count() const { return mesh_nodes + static_cast<int>(origin_nodes.size()); }
  bool is_origin(int node) const { return node >= mesh_nodes; }
  /// Index of an origin node within origin_nodes.
  int origin_slot(int node) const { return node - mesh_nodes; }
};

Topology build_topology(const PolarMesh& mesh, const WeightSpec& weight, OriginMode mode);

}  // namespace sdl

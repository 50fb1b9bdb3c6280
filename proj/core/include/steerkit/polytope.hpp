#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace steerkit {

/// Whether the polytope under- or over-approximates the Bloch ball.
enum class PolytopeMode { Inscribed, Circumscribed };

/// Convex polytope approximating the Bloch sphere.
///
/// Inscribed: vertices on the unit sphere; covering_cosine is the inradius
/// of their hull = min over facets of the origin-plane distance = the worst
/// cosine between a sphere point and its best representation in the hull.
/// Circumscribed: the same vertex set scaled by 1/inradius so the hull
/// contains the unit ball (every facet plane at distance >= 1).
struct BlochPolytope {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;  // hull triangles (vertex indices)
  PolytopeMode mode = PolytopeMode::Inscribed;
  double covering_cosine = 0.0;  // inradius of the unit-vertex hull

  int size() const { return static_cast<int>(vertices.size()); }
};

/// Smallest member of the geodesic icosahedral family {12, 42, 162, 642,
/// 2562} with at least `resolution` vertices (requests above the family cap
/// are clamped to 2562).
int snapped_icosphere_size(int resolution);

/// Geodesic subdivision of the icosahedron, oriented with a vertex pair at
/// the poles (+z and -z are always vertices) and centrally symmetric. The
/// vertex count snaps up within the {12, 42, 162, 642, 2562} family.
BlochPolytope icosphere(int resolution, PolytopeMode mode);

/// Cube with vertices (+-1, +-1, +-1)/sqrt(3) (inradius 1/sqrt(3)).
BlochPolytope cube(PolytopeMode mode);

/// One representative per antipodal vertex pair (used to turn a centrally
/// symmetric direction net into a list of binary measurement settings).
std::vector<Eigen::Vector3d> antipodal_representatives(const BlochPolytope& poly);

}  // namespace steerkit

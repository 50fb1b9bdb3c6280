#include "steerkit/polytope.hpp"

#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

#include "steerkit/errors.hpp"

namespace steerkit {

namespace {

struct Mesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> faces;
};

Mesh icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Mesh mesh;
  mesh.vertices = {
      {-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
      {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : mesh.vertices) v.normalize();
  mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  // Rotate vertex 0 onto +z so the poles are net vertices.
  const Eigen::Quaterniond q =
      Eigen::Quaterniond::FromTwoVectors(mesh.vertices[0], Eigen::Vector3d::UnitZ());
  for (auto& v : mesh.vertices) v = q * v;
  return mesh;
}

Mesh subdivide(const Mesh& mesh) {
  Mesh out;
  out.vertices = mesh.vertices;
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Eigen::Vector3d v = (out.vertices[a] + out.vertices[b]).normalized();
    const int idx = static_cast<int>(out.vertices.size());
    out.vertices.push_back(v);
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const auto& f : mesh.faces) {
    const int ab = mid(f[0], f[1]);
    const int bc = mid(f[1], f[2]);
    const int ca = mid(f[2], f[0]);
    out.faces.push_back({f[0], ab, ca});
    out.faces.push_back({ab, f[1], bc});
    out.faces.push_back({ca, bc, f[2]});
    out.faces.push_back({ab, bc, ca});
  }
  return out;
}

double inradius_of(const Mesh& mesh) {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& f : mesh.faces) {
    const Eigen::Vector3d& v0 = mesh.vertices[f[0]];
    const Eigen::Vector3d normal =
        (mesh.vertices[f[1]] - v0).cross(mesh.vertices[f[2]] - v0);
    const double len = normal.norm();
    if (len <= 0.0) {
      throw SolverNumericalFailure("degenerate facet in direction net");
    }
    r = std::min(r, std::abs(normal.dot(v0)) / len);
  }
  return r;
}

}  // namespace

int snapped_icosphere_size(int resolution) {
  static constexpr int kSizes[] = {12, 42, 162, 642, 2562};
  for (const int s : kSizes) {
    if (resolution <= s) return s;
  }
  return 2562;
}

BlochPolytope icosphere(int resolution, PolytopeMode mode) {
  if (resolution < 1) {
    throw ParameterOutOfRange("net resolution must be positive");
  }
  const int target = snapped_icosphere_size(resolution);
  Mesh mesh = icosahedron();
  while (static_cast<int>(mesh.vertices.size()) < target) {
    mesh = subdivide(mesh);
  }
  const double c = inradius_of(mesh);

  BlochPolytope poly;
  poly.mode = mode;
  poly.covering_cosine = c;
  poly.faces = mesh.faces;
  poly.vertices = std::move(mesh.vertices);
  if (mode == PolytopeMode::Circumscribed) {
    for (auto& v : poly.vertices) v /= c;
  }
  return poly;
}

BlochPolytope cube(PolytopeMode mode) {
  BlochPolytope poly;
  poly.mode = mode;
  const double s = 1.0 / std::sqrt(3.0);
  poly.covering_cosine = s;
  for (int i = 0; i < 8; ++i) {
    poly.vertices.emplace_back((i & 4) ? s : -s, (i & 2) ? s : -s, (i & 1) ? s : -s);
  }
  // Two triangles per cube face; orientation is irrelevant downstream.
  poly.faces = {{0, 1, 3}, {0, 3, 2}, {4, 5, 7}, {4, 7, 6}, {0, 1, 5}, {0, 5, 4},
                {2, 3, 7}, {2, 7, 6}, {0, 2, 6}, {0, 6, 4}, {1, 3, 7}, {1, 7, 5}};
  if (mode == PolytopeMode::Circumscribed) {
    for (auto& v : poly.vertices) v /= s;
  }
  return poly;
}

std::vector<Eigen::Vector3d> antipodal_representatives(const BlochPolytope& poly) {
  const int n = static_cast<int>(poly.vertices.size());
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    if (partner[i] >= 0) continue;
    int best = -1;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (poly.vertices[i] + poly.vertices[j]).norm();
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < 0 || best_dist > 1e-9) {
      throw SolverNumericalFailure("direction net is not centrally symmetric");
    }
    partner[i] = best;
    partner[best] = i;
  }
  std::vector<Eigen::Vector3d> reps;
  reps.reserve(n / 2);
  for (int i = 0; i < n; ++i) {
    if (i < partner[i]) reps.push_back(poly.vertices[i]);
  }
  return reps;
}

}  // namespace steerkit

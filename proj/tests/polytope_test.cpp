#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"

using namespace steerkit;

TEST_CASE("icosphere size snapping") {
  CHECK(snapped_icosphere_size(1) == 12);
  CHECK(snapped_icosphere_size(12) == 12);
  CHECK(snapped_icosphere_size(13) == 42);
  CHECK(snapped_icosphere_size(26) == 42);
  CHECK(snapped_icosphere_size(42) == 42);
  CHECK(snapped_icosphere_size(43) == 162);
  CHECK(snapped_icosphere_size(162) == 162);
  CHECK(snapped_icosphere_size(642) == 642);
  CHECK(snapped_icosphere_size(2562) == 2562);
  CHECK(snapped_icosphere_size(5000) == 2562);
}

TEST_CASE("icosphere nets") {
  // Inradius of the convex hull, checked against an independent
  // convex-hull computation of the subdivided icosahedron.
  const struct {
    int size;
    double cosine;
  } expected[] = {
      {12, 0.794654472291766},  {42, 0.934172358962716},
      {162, 0.982246946376846}, {642, 0.995471632390544},
      {2562, 0.998862116729641},
  };

  for (const auto& [size, cosine] : expected) {
    CAPTURE(size);
    const BlochPolytope net = icosphere(size, PolytopeMode::Inscribed);
    CHECK(static_cast<int>(net.size()) == size);
    CHECK(net.mode == PolytopeMode::Inscribed);
    CHECK(std::abs(net.covering_cosine - cosine) <= 1e-12);

    bool has_north = false, has_south = false;
    for (const auto& v : net.vertices) {
      CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
      if ((v - Eigen::Vector3d(0, 0, 1)).norm() <= 1e-12) has_north = true;
      if ((v + Eigen::Vector3d(0, 0, 1)).norm() <= 1e-12) has_south = true;
      // Central symmetry: the antipode is also a vertex.
      const bool found = std::any_of(
          net.vertices.begin(), net.vertices.end(),
          [&](const Eigen::Vector3d& w) { return (w + v).norm() <= 1e-10; });
      CHECK(found);
    }
    CHECK(has_north);
    CHECK(has_south);
  }
}

TEST_CASE("circumscribed mode scales vertices by the inverse inradius") {
  const BlochPolytope in = icosphere(162, PolytopeMode::Inscribed);
  const BlochPolytope out = icosphere(162, PolytopeMode::Circumscribed);
  REQUIRE(in.size() == out.size());
  CHECK(out.mode == PolytopeMode::Circumscribed);
  CHECK(std::abs(out.covering_cosine - in.covering_cosine) <= 1e-15);
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Eigen::Vector3d expect = in.vertices[i] / in.covering_cosine;
    CHECK((out.vertices[i] - expect).norm() <= 1e-12);
    CHECK(out.vertices[i].norm() > 1.0);
  }
}

TEST_CASE("cube polytope") {
  const BlochPolytope box = cube(PolytopeMode::Inscribed);
  CHECK(box.size() == 8);
  CHECK(std::abs(box.covering_cosine - 1.0 / std::sqrt(3.0)) <= 1e-15);
  for (const auto& v : box.vertices) {
    CHECK(std::abs(v.norm() - 1.0) <= 1e-15);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(std::abs(v[k]) - 1.0 / std::sqrt(3.0)) <= 1e-15);
    }
  }
  const BlochPolytope grown = cube(PolytopeMode::Circumscribed);
  for (const auto& v : grown.vertices) {
    CHECK(std::abs(v.norm() - std::sqrt(3.0)) <= 1e-12);
  }
}

TEST_CASE("antipodal representatives pick one vertex per axis") {
  for (const int size : {12, 42, 162}) {
    const BlochPolytope net = icosphere(size, PolytopeMode::Inscribed);
    const auto reps = antipodal_representatives(net);
    CHECK(reps.size() == net.size() / 2);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      for (std::size_t j = i + 1; j < reps.size(); ++j) {
        CHECK((reps[i] - reps[j]).norm() > 1e-9);
        CHECK((reps[i] + reps[j]).norm() > 1e-9);
      }
    }
  }
}

TEST_CASE("faces describe the hull") {
  const BlochPolytope net = icosphere(42, PolytopeMode::Inscribed);
  REQUIRE(!net.faces.empty());
  // Euler: V - E + F = 2 with triangular faces, E = 3F/2.
  CHECK(net.faces.size() == 2 * net.size() - 4);
  double min_support = 1.0;
  for (const auto& face : net.faces) {
    REQUIRE(face.size() == 3);
    const Eigen::Vector3d& p = net.vertices[face[0]];
    const Eigen::Vector3d& q = net.vertices[face[1]];
    const Eigen::Vector3d& r = net.vertices[face[2]];
    Eigen::Vector3d normal = (q - p).cross(r - p);
    normal /= normal.norm();
    if (normal.dot(p) < 0) normal = -normal;
    const double support = normal.dot(p);
    CHECK(std::abs(normal.dot(q) - support) <= 1e-12);
    CHECK(std::abs(normal.dot(r) - support) <= 1e-12);
    min_support = std::min(min_support, support);
    // All vertices on the inner side of the face plane.
    for (const auto& v : net.vertices) {
      CHECK(normal.dot(v) <= support + 1e-12);
    }
  }
  CHECK(std::abs(min_support - net.covering_cosine) <= 1e-12);
}

TEST_CASE("invalid polytope arguments") {
  CHECK_THROWS_AS(icosphere(0, PolytopeMode::Inscribed), ParameterOutOfRange);
  CHECK_THROWS_AS(icosphere(-5, PolytopeMode::Circumscribed), ParameterOutOfRange);
}

#include <gtest/gtest.h>

#include <random>

#include <Eigen/Geometry>

#include "fixtures.hpp"
#include "sphcoord/errors.hpp"
#include "sphcoord/geometry.hpp"

using namespace sphcoord;

namespace {

const SpherePoint ex(1, 0, 0), ey(0, 1, 0), ez(0, 0, 1);

SphericalTriangle tri(const SpherePoint& u, const SpherePoint& v, const SpherePoint& w, const SpherePoint& b) {
  SphericalTriangle t;
  t.u = u;
  t.v = v;
  t.w = w;
  t.barycenter = b;
  t.orientation = refresh_orientation(t);
  return t;
}

}  // namespace

TEST(Geometry, NormalizedRejectsZero) {
  EXPECT_THROW(normalized(Eigen::Vector3d::Zero()), NumericalError);
  EXPECT_NEAR(normalized(Eigen::Vector3d(3, 4, 0)).norm(), 1.0, 1e-15);
}

TEST(Geometry, GeodesicDistance) {
  EXPECT_NEAR(geodesic_distance(ex, ey), kPi / 2, 1e-15);
  EXPECT_NEAR(geodesic_distance(ex, -ex), kPi, 1e-15);
  EXPECT_NEAR(geodesic_distance(ex, ex), 0.0, 1e-15);
}

TEST(Geometry, OctantArea) {
  EXPECT_NEAR(cone_excess(ex, ey, ez), kPi / 2, 1e-12);
  const SphericalTriangle small = tri(ex, ey, ez, normalized(ex + ey + ez));
  EXPECT_NEAR(area(small), kPi / 2, 1e-12);
  const SphericalTriangle large = tri(ex, ey, ez, -normalized(ex + ey + ez));
  EXPECT_NEAR(area(large), 3.5 * kPi, 1e-12);
}

TEST(Geometry, DegenerateTriangleHasZeroArea) {
  EXPECT_EQ(area(tri(ex, ex, ex, ex)), 0.0);
  EXPECT_NEAR(cone_excess(ex, ey, normalized(ex + ey)), 0.0, 1e-12);
}

TEST(Geometry, WoundTriangleAreas) {
  SphericalTriangle t;
  t.winding = 1;
  EXPECT_EQ(area(t), kFourPi);
  t.winding = -2;
  t.orientation = -1;
  EXPECT_EQ(area(t), 2 * kFourPi);
  EXPECT_EQ(signed_area(t), -2 * kFourPi);
}

TEST(Geometry, LhuilierMatchesGirard) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const SpherePoint u = fixtures::random_sphere_point(rng), v = fixtures::random_sphere_point(rng),
                      w = fixtures::random_sphere_point(rng);
    if (std::abs(u.dot(v.cross(w))) < 1e-6) continue;
    ASSERT_NEAR(cone_excess(u, v, w), fixtures::girard_area(u, v, w), 1e-9);
  }
}

TEST(Geometry, ComplementaryAreasSumToFourPi) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const SpherePoint u = fixtures::random_sphere_point(rng), v = fixtures::random_sphere_point(rng),
                      w = fixtures::random_sphere_point(rng);
    const SpherePoint b = normalized(u + v + w);
    EXPECT_NEAR(area(tri(u, v, w, b)) + area(tri(u, v, w, -b)), kFourPi, 1e-9);
  }
}

TEST(Geometry, InCone) {
  EXPECT_TRUE(in_cone(normalized(ex + ey + ez), ex, ey, ez));
  EXPECT_FALSE(in_cone(-normalized(ex + ey + ez), ex, ey, ez));
  EXPECT_TRUE(in_cone(ex, ex, ey, ez));
  EXPECT_TRUE(in_cone(normalized(ex + ey + ez), ez, ey, ex));
}

TEST(Geometry, OrientationFlipsWithRegionAndOrder) {
  const SpherePoint b = normalized(ex + ey + ez);
  const SphericalTriangle a = tri(ex, ey, ez, b);
  const SphericalTriangle swapped = tri(ey, ex, ez, b);
  const SphericalTriangle complement = tri(ex, ey, ez, -b);
  EXPECT_EQ(a.orientation, -swapped.orientation);
  EXPECT_EQ(a.orientation, -complement.orientation);
  // det(ex, ey, ez) > 0: counterclockwise from outside, clockwise from the centre.
  EXPECT_EQ(a.orientation, -1);
}

TEST(Geometry, OrientationKeptForFlatTriangles) {
  SphericalTriangle t = tri(ex, ey, normalized(ex + ey), ez);
  t.orientation = -1;
  EXPECT_EQ(refresh_orientation(t), -1);
  t.orientation = 1;
  EXPECT_EQ(refresh_orientation(t), 1);
}

TEST(Geometry, BarycenterFollowsPoleRule) {
  SphericalTriangle t = tri(ex, ey, ez, -ex);
  EXPECT_NEAR((update_barycenter(t) + normalized(ex + ey + ez)).norm(), 0.0, 1e-15);
  t.barycenter = ex;
  EXPECT_NEAR((update_barycenter(t) - normalized(ex + ey + ez)).norm(), 0.0, 1e-15);
  SphericalTriangle zero;
  zero.u = ex;
  zero.v = from_spherical(2 * kPi / 3, 0);
  zero.w = from_spherical(-2 * kPi / 3, 0);
  zero.barycenter = ez;
  EXPECT_EQ(update_barycenter(zero), ez);
}

TEST(Geometry, ProcrustesRecoversRotationAndReflection) {
  std::mt19937_64 rng(4);
  std::vector<SpherePoint> a;
  for (int i = 0; i < 20; ++i) a.push_back(fixtures::random_sphere_point(rng));
  const Eigen::Matrix3d r = Eigen::AngleAxisd(0.7, normalized(Eigen::Vector3d(1, 2, 3))).toRotationMatrix();
  Eigen::Matrix3d q = r;
  q.col(0) *= -1;
  for (const Eigen::Matrix3d& m : {r, q}) {
    std::vector<SpherePoint> b;
    for (const auto& p : a) b.push_back(m * p);
    EXPECT_LT((procrustes_align(a, b) - m).norm(), 1e-10);
  }
  EXPECT_THROW(procrustes_align({ex, ey}, {ex, ey}), InputError);
  EXPECT_THROW(procrustes_align({ex, ex, ex}, {ey, ey, ey}), NumericalError);
}

TEST(Geometry, SphericalCoordinates) {
  const auto [az, el] = to_spherical(ez);
  EXPECT_NEAR(el, kPi / 2, 1e-15);
  (void)az;
  const auto [az0, el0] = to_spherical(ex);
  EXPECT_EQ(az0, 0.0);
  EXPECT_EQ(el0, 0.0);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const SpherePoint p = fixtures::random_sphere_point(rng);
    const auto [a, e] = to_spherical(p);
    EXPECT_LT((from_spherical(a, e) - p).norm(), 1e-12);
  }
}

TEST(Geometry, AngleWrapping) {
  EXPECT_NEAR(wrap_pi(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_pi(-kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_two_pi(-kPi / 2), 3 * kPi / 2, 1e-15);
  EXPECT_EQ(wrap_two_pi(2 * kPi), 0.0);
}

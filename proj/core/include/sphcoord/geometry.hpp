#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace sphcoord {

/// Point of the unit sphere S^2 in R^3.
using SpherePoint = Eigen::Vector3d;

constexpr double kPi = 3.14159265358979323846;
constexpr double kFourPi = 4.0 * kPi;

/// Projects v onto S^2. Throws NumericalError for zero or non-finite input.
SpherePoint normalized(const Eigen::Vector3d& v);

/// Great-circle distance, via atan2(|a x b|, a.b).
double geodesic_distance(const SpherePoint& a, const SpherePoint& b);

/// v - <v,p> p.
Eigen::Vector3d tangent_project(const SpherePoint& p, const Eigen::Vector3d& v);

/// Area of the spherical triangle spanned by the three points inside the cone
/// they generate (always <= 2 pi). Computed by L'Huilier's formula.
double cone_excess(const SpherePoint& u, const SpherePoint& v, const SpherePoint& w);

/// True iff b = x u + y v + z w with x, y, z >= 0, i.e. b lies in the cone
/// spanned by the three points (and so in their small spherical triangle).
bool in_cone(const SpherePoint& b, const SpherePoint& u, const SpherePoint& v, const SpherePoint& w);

/// Image of a 2-simplex. The tracked barycenter says which of the two regions
/// bounded by the geodesic triangle is meant; a non-zero winding means the
/// image wraps the whole sphere.
struct SphericalTriangle {
  SpherePoint u{1, 0, 0};
  SpherePoint v{1, 0, 0};
  SpherePoint w{1, 0, 0};
  SpherePoint barycenter{1, 0, 0};
  int orientation = 1;
  int winding = 0;
};

/// In [0, 4 pi |winding|] for wound triangles, [0, 4 pi] otherwise.
double area(const SphericalTriangle& t);

/// orientation * area.
double signed_area(const SphericalTriangle& t);

/// normalize(u+v+w), or its antipode if that is closer to the previous
/// barycenter. Keeps the previous barycenter when u+v+w vanishes.
SpherePoint update_barycenter(const SphericalTriangle& t);

/// +1 when u -> v -> w runs counterclockwise around the region selected by
/// the barycenter as seen from the centre of the sphere (so a small triangle
/// with det(u, v, w) < 0 is positive). Left untouched for flat triangles.
int refresh_orientation(const SphericalTriangle& t);

/// Orthogonal Q (reflections allowed) minimizing sum |Q a_i - b_i|^2.
/// Throws InputError for size mismatch or fewer than 3 points, NumericalError
/// when the cross-covariance has rank < 2.
Eigen::Matrix3d procrustes_align(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b);

/// (azimuth in (-pi, pi], elevation in [-pi/2, pi/2]).
std::pair<double, double> to_spherical(const SpherePoint& p);
SpherePoint from_spherical(double azimuth, double elevation);

/// Wraps an angle into (-pi, pi].
double wrap_pi(double angle);
/// Wraps an angle into [0, 2 pi).
double wrap_two_pi(double angle);

}  // namespace sphcoord

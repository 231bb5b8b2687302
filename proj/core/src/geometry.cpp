#include "sphcoord/geometry.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "sphcoord/errors.hpp"

namespace sphcoord {

namespace {

constexpr double kTinyArea = 1e-14;
constexpr double kTinyVector = 1e-12;

double det3(const SpherePoint& u, const SpherePoint& v, const SpherePoint& w) { return u.dot(v.cross(w)); }

}  // namespace

SpherePoint normalized(const Eigen::Vector3d& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n == 0.0) throw NumericalError("cannot project a zero or non-finite vector onto the sphere");
  return v / n;
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

Eigen::Vector3d tangent_project(const SpherePoint& p, const Eigen::Vector3d& v) { return v - v.dot(p) * p; }

double cone_excess(const SpherePoint& u, const SpherePoint& v, const SpherePoint& w) {
  const double a = geodesic_distance(v, w);
  const double b = geodesic_distance(u, w);
  const double c = geodesic_distance(u, v);
  const double s = 0.5 * (a + b + c);
  auto t = [](double x) { return std::max(0.0, std::tan(0.5 * std::max(0.0, x))); };
  const double prod = t(s) * t(s - a) * t(s - b) * t(s - c);
  return 4.0 * std::atan(std::sqrt(prod));
}

bool in_cone(const SpherePoint& b, const SpherePoint& u, const SpherePoint& v, const SpherePoint& w) {
  const double d = det3(u, v, w);
  if (d == 0.0) return true;
  const double s = d > 0 ? 1.0 : -1.0;
  return s * det3(b, v, w) >= 0.0 && s * det3(u, b, w) >= 0.0 && s * det3(u, v, b) >= 0.0;
}

double area(const SphericalTriangle& t) {
  if (t.winding != 0) return kFourPi * std::abs(t.winding);
  const double excess = cone_excess(t.u, t.v, t.w);
  if (excess < kTinyArea) return 0.0;
  return in_cone(t.barycenter, t.u, t.v, t.w) ? excess : kFourPi - excess;
}

double signed_area(const SphericalTriangle& t) { return t.orientation * area(t); }

SpherePoint update_barycenter(const SphericalTriangle& t) {
  const Eigen::Vector3d sum = t.u + t.v + t.w;
  const double n = sum.norm();
  if (n < kTinyVector) return t.barycenter;
  const SpherePoint cand = sum / n;
  return cand.dot(t.barycenter) >= 0.0 ? cand : SpherePoint(-cand);
}

int refresh_orientation(const SphericalTriangle& t) {
  const double det = det3(t.u, t.v, t.w);
  if (det == 0.0) return t.orientation;
  const bool inside = in_cone(t.barycenter, t.u, t.v, t.w);
  return (det > 0) != inside ? 1 : -1;
}

Eigen::Matrix3d procrustes_align(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  if (a.size() != b.size()) throw InputError("alignment needs point sets of equal size");
  if (a.size() < 3) throw InputError("alignment needs at least 3 corresponding points");
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < a.size(); ++i) m += b[i] * a[i].transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(1) > 1e-9 * std::max(1.0, sv(0)))) {
    throw NumericalError("degenerate configuration: cross-covariance has rank < 2");
  }
  return svd.matrixU() * svd.matrixV().transpose();
}

std::pair<double, double> to_spherical(const SpherePoint& p) {
  return {std::atan2(p.y(), p.x()), std::asin(std::clamp(p.z(), -1.0, 1.0))};
}

SpherePoint from_spherical(double azimuth, double elevation) {
  const double c = std::cos(elevation);
  return {c * std::cos(azimuth), c * std::sin(azimuth), std::sin(elevation)};
}

double wrap_pi(double angle) {
  double r = std::remainder(angle, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double wrap_two_pi(double angle) {
  double r = std::fmod(angle, 2.0 * kPi);
  if (r < 0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

}  // namespace sphcoord

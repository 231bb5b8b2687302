#include "sphcoord/energy.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sphcoord/errors.hpp"

namespace sphcoord {

namespace {

constexpr double kTinyGradient = 1e-12;
constexpr std::size_t kParallelThreshold = 2048;

}  // namespace

void EnergyConfig::validate(double rest_bound) const {
  if (!(k > 0.0) || !std::isfinite(k)) throw InputError("spring constant k must be positive");
  if (!(rest >= 0.0) || !(rest < rest_bound)) throw InputError("rest value out of range");
}

double total_energy(const SphericalMapState& m, const EnergyConfig& cfg) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.triangles.size(); ++i) sum += cfg.term(area(m.triangle(i)));
  return sum;
}

Eigen::Vector3d canonical_direction(const SpherePoint& basepoint, int orientation, std::size_t corner,
                                    const SpherePoint& at) {
  Eigen::Vector3d ref = tangent_project(basepoint, Eigen::Vector3d(0, 1, 0));
  if (ref.norm() < 1e-6) ref = tangent_project(basepoint, Eigen::Vector3d(0, 0, 1));
  const Eigen::Vector3d t0 = ref.normalized();
  const Eigen::Vector3d t1 = basepoint.cross(t0);
  const double phi = orientation * 2.0 * kPi * static_cast<double>(corner) / 3.0;
  const Eigen::Vector3d dir = std::cos(phi) * t0 + std::sin(phi) * t1;
  const Eigen::Vector3d g = tangent_project(at, dir);
  const double n = g.norm();
  return n < kTinyGradient ? Eigen::Vector3d::Zero() : Eigen::Vector3d(g / n);
}

std::array<Eigen::Vector3d, 3> triangle_updates(const SphericalMapState& m, std::size_t i, const EnergyConfig& cfg) {
  std::array<Eigen::Vector3d, 3> out{Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero(), Eigen::Vector3d::Zero()};
  const TriangleState& t = m.triangles[i];
  const double mag = cfg.magnitude(area(m.triangle(i)));
  if (mag == 0.0) return out;
  for (std::size_t k = 0; k < 3; ++k) {
    const SpherePoint& p = m.positions[t.corners[k]];
    if (t.winding != 0) {
      out[k] = mag * canonical_direction(m.basepoint, t.orientation, k, p);
      continue;
    }
    const Eigen::Vector3d g = tangent_project(p, p - t.barycenter);
    const double n = g.norm();
    if (n < kTinyGradient) continue;
    out[k] = mag * g / n;
  }
  return out;
}

std::vector<Eigen::Vector3d> vertex_updates(const SphericalMapState& m, const EnergyConfig& cfg, unsigned threads) {
  const std::size_t nt = m.triangles.size();
  std::vector<Eigen::Vector3d> out(m.positions.size(), Eigen::Vector3d::Zero());
  if (threads <= 1 || nt < kParallelThreshold) {
    for (std::size_t i = 0; i < nt; ++i) {
      const auto c = triangle_updates(m, i, cfg);
      for (std::size_t k = 0; k < 3; ++k) out[m.triangles[i].corners[k]] += c[k];
    }
    return out;
  }
  std::vector<std::array<Eigen::Vector3d, 3>> buffer(nt);
  std::vector<std::thread> pool;
  const std::size_t chunk = (nt + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = w * chunk, hi = std::min(nt, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) buffer[i] = triangle_updates(m, i, cfg);
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < nt; ++i) {
    for (std::size_t k = 0; k < 3; ++k) out[m.triangles[i].corners[k]] += buffer[i][k];
  }
  return out;
}

double total_energy_1d(const CircularMapState& m, const EnergyConfig& cfg) {
  double sum = 0.0;
  for (std::size_t e = 0; e < m.edges.size(); ++e) sum += cfg.term(std::abs(m.signed_arc(e)));
  return sum;
}

std::vector<double> vertex_updates_1d(const CircularMapState& m, const EnergyConfig& cfg) {
  std::vector<double> out(m.angles.size(), 0.0);
  for (std::size_t e = 0; e < m.edges.size(); ++e) {
    const double s = m.signed_arc(e);
    if (s == 0.0) continue;
    const double pull = cfg.magnitude(std::abs(s)) * (s > 0 ? 1.0 : -1.0);
    out[m.edges[e].b] += pull;
    out[m.edges[e].a] -= pull;
  }
  return out;
}

}  // namespace sphcoord

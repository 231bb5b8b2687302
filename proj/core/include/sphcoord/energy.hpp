#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "sphcoord/mapping.hpp"

namespace sphcoord {

/// Spring energy sum 1/2 (k (A - R))^2 over simplices, where A is the image
/// area (2D) or arc length (1D). Harmonic energy is k = 1, R = 0.
struct EnergyConfig {
  enum class Kind { kHarmonic, kSpring };
  Kind kind = Kind::kHarmonic;
  double k = 1.0;
  double rest = 0.0;

  static EnergyConfig harmonic() { return {}; }
  static EnergyConfig spring(double k, double rest) { return {Kind::kSpring, k, rest}; }

  [[nodiscard]] double magnitude(double measure) const { return k * (measure - rest); }
  [[nodiscard]] double term(double measure) const {
    const double m = magnitude(measure);
    return 0.5 * m * m;
  }
  /// Throws InputError unless k > 0 and 0 <= rest < rest_bound.
  void validate(double rest_bound) const;
};

double total_energy(const SphericalMapState& m, const EnergyConfig& cfg);

/// Unit tangent direction along which vertex `corner` of a wound triangle is
/// pushed (the update is subtracted, so the vertex moves the other way).
/// Corner k gets the reference tangent [0,1,0] at the basepoint rotated by
/// 2 pi k / 3, counterclockwise seen from outside for orientation +1 and
/// clockwise for -1.
Eigen::Vector3d canonical_direction(const SpherePoint& basepoint, int orientation, std::size_t corner,
                                    const SpherePoint& at);

/// Contributions of triangle i to the updates of its three corners.
std::array<Eigen::Vector3d, 3> triangle_updates(const SphericalMapState& m, std::size_t i, const EnergyConfig& cfg);

/// Per-vertex tangent update vectors, summed over incident triangles in
/// triangle order. `threads` > 1 splits the per-triangle work; the summation
/// order, and therefore the result, does not depend on it.
std::vector<Eigen::Vector3d> vertex_updates(const SphericalMapState& m, const EnergyConfig& cfg, unsigned threads = 1);

double total_energy_1d(const CircularMapState& m, const EnergyConfig& cfg);

/// Per-vertex angular updates; positive values mean the vertex should move
/// toward smaller angles.
std::vector<double> vertex_updates_1d(const CircularMapState& m, const EnergyConfig& cfg);

}  // namespace sphcoord

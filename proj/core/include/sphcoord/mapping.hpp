#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "sphcoord/cohomology.hpp"
#include "sphcoord/complex.hpp"
#include "sphcoord/geometry.hpp"

namespace sphcoord {

struct TriangleState {
  Simplex simplex;
  std::array<std::size_t, 3> corners{};  // local vertex indices, in simplex order
  SpherePoint barycenter{1, 0, 0};
  int orientation = 1;
  int winding = 0;
};

/// Map from the 2-skeleton of a complex to S^2 together with the per-triangle
/// bookkeeping that disambiguates each triangle's image.
struct SphericalMapState {
  FilteredComplex complex;
  std::vector<Vertex> vertex_ids;  // sorted; positions[i] belongs to vertex_ids[i]
  std::vector<SpherePoint> positions;
  std::vector<TriangleState> triangles;
  SpherePoint basepoint{1, 0, 0};
  std::size_t iteration = 0;

  [[nodiscard]] SphericalTriangle triangle(std::size_t i) const;
  [[nodiscard]] std::size_t local_index(Vertex v) const;
};

struct EdgeState {
  Simplex simplex;
  std::size_t a = 0;  // local index of the smaller vertex
  std::size_t b = 0;
  int winding = 0;
};

/// Map from the 1-skeleton to S^1. An edge's image runs from angle[a] to
/// angle[b] along the signed arc wrap(angle[b] - angle[a]) + 2 pi winding.
struct CircularMapState {
  FilteredComplex complex;
  std::vector<Vertex> vertex_ids;
  std::vector<double> angles;  // in [0, 2 pi)
  std::vector<EdgeState> edges;
  std::size_t iteration = 0;

  [[nodiscard]] double signed_arc(std::size_t e) const;
  [[nodiscard]] std::size_t local_index(Vertex v) const;
};

/// Canonical lift of an integer 2-cocycle: every vertex at the basepoint,
/// faces with coefficient n != 0 wrap the sphere n times.
/// Throws InputError if alpha is not an integer 2-cocycle on c.
SphericalMapState initial_spherical_map(const Cochain& alpha, const FilteredComplex& c,
                                        const SpherePoint& basepoint = SpherePoint(1, 0, 0));

/// Every vertex at base_angle, edge windings equal to the coefficients.
CircularMapState initial_circular_map(const Cochain& alpha, const FilteredComplex& c, double base_angle = 0.0);

struct CoordinateTable {
  std::vector<Vertex> ids;
  /// n x 2 (azimuth, elevation) for spherical maps, n x 1 (angle) for circular ones.
  Eigen::MatrixXd values;

  [[nodiscard]] bool spherical() const { return values.cols() == 2; }
};

CoordinateTable extract_coordinates(const SphericalMapState& m);
CoordinateTable extract_coordinates(const CircularMapState& m);

/// Signs s_f making sum s_f f a cycle when the 2-skeleton of c is a closed
/// orientable surface with a single component; nullopt otherwise.
std::optional<std::map<Simplex, std::int64_t>> fundamental_cycle(const FilteredComplex& c);

/// (1 / 4 pi) sum s_f signed_area(f) over the given cycle.
double map_degree(const SphericalMapState& m, const std::map<Simplex, std::int64_t>& cycle);

}  // namespace sphcoord

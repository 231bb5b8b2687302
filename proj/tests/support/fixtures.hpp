// Shared fixtures and brute-force oracles for the unit and acceptance tests.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "sphcoord/cohomology.hpp"
#include "sphcoord/complex.hpp"
#include "sphcoord/geometry.hpp"

namespace fixtures {

using namespace sphcoord;

inline PointCloud octahedron_points() {
  Eigen::MatrixXd p(6, 3);
  p << 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1, 0, 0, 0, 1, 0, 0, -1;
  return PointCloud(p);
}

/// Rips complex of the six unit axis points up to scale 1.9: exactly the
/// octahedron boundary (antipodal pairs at distance 2 never connect).
inline FilteredComplex octahedron_surface() {
  return build_vr(DistanceMatrix::euclidean(octahedron_points()), 3, 1.9);
}

/// Boundary of a tetrahedron: four triangles and their faces, no 3-simplex.
inline FilteredComplex tetrahedron_surface() {
  std::vector<FilteredSimplex> listed;
  for (Vertex v = 0; v < 4; ++v) listed.push_back({Simplex{v}, 0.0});
  for (Vertex a = 0; a < 4; ++a)
    for (Vertex b = a + 1; b < 4; ++b) listed.push_back({Simplex{a, b}, 0.5});
  listed.push_back({Simplex{0, 1, 2}, 1.0});
  listed.push_back({Simplex{0, 1, 3}, 1.0});
  listed.push_back({Simplex{0, 2, 3}, 1.0});
  listed.push_back({Simplex{1, 2, 3}, 1.0});
  return load_complex(std::move(listed));
}

inline SpherePoint random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Vector3d v;
  do {
    v = Eigen::Vector3d(g(rng), g(rng), g(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

/// Random metric on n points: coordinates in [0,1]^3.
inline DistanceMatrix random_distances(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd p(static_cast<Eigen::Index>(n), 3);
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < 3; ++j) p(i, j) = u(rng);
  return DistanceMatrix::euclidean(PointCloud(p));
}

/// Rank over F_p by Gaussian elimination on a dense copy.
inline std::size_t rank_mod_p(std::vector<std::vector<std::int64_t>> m, std::int64_t p) {
  auto inv = [p](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t s = inv(((m[rank][c] % p) + p) % p);
    for (auto& x : m[rank]) x = ((x * s) % p + p) % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      const std::int64_t f = m[r][c];
      for (std::size_t k = 0; k < cols; ++k) m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// Boundary matrix from the dim-simplices to the (dim-1)-simplices of the
/// subcomplex with values <= t.
inline std::vector<std::vector<std::int64_t>> boundary_at(const FilteredComplex& c, int dim, double t) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i : c.indices(dim - 1))
    if (c[i].value <= t) rows.push_back(i);
  for (std::size_t i : c.indices(dim))
    if (c[i].value <= t) cols.push_back(i);
  std::vector<std::vector<std::int64_t>> m(rows.size(), std::vector<std::int64_t>(cols.size(), 0));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const Simplex& s = c[cols[j]].simplex;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const Simplex f = s.facet(k);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (c[rows[r]].simplex == f) m[r][j] = (k % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

/// dim-th Betti number over F_p of the subcomplex with values <= t.
inline std::size_t brute_betti(const FilteredComplex& c, int dim, double t, std::int64_t p) {
  std::size_t n = 0;
  for (std::size_t i : c.indices(dim))
    if (c[i].value <= t) ++n;
  const std::size_t down = dim > 0 ? rank_mod_p(boundary_at(c, dim, t), p) : 0;
  const std::size_t up = dim < c.max_dim() ? rank_mod_p(boundary_at(c, dim + 1, t), p) : 0;
  return n - down - up;
}

/// Spherical excess from the interior angles (Girard's theorem).
inline double girard_area(const SpherePoint& u, const SpherePoint& v, const SpherePoint& w) {
  auto angle = [](const SpherePoint& at, const SpherePoint& a, const SpherePoint& b) {
    const Eigen::Vector3d ta = tangent_project(at, a - at), tb = tangent_project(at, b - at);
    return std::atan2(ta.cross(tb).norm(), ta.dot(tb));
  };
  return angle(u, v, w) + angle(v, w, u) + angle(w, u, v) - kPi;
}

}  // namespace fixtures

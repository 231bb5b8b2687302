#include "sphcoord/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "sphcoord/errors.hpp"

namespace sphcoord {

namespace {

std::size_t lookup(const std::vector<Vertex>& ids, Vertex v) {
  auto it = std::lower_bound(ids.begin(), ids.end(), v);
  if (it == ids.end() || *it != v) throw InputError("vertex " + std::to_string(v) + " is not in the map");
  return static_cast<std::size_t>(it - ids.begin());
}

void check_cocycle_input(const Cochain& alpha, int degree, const FilteredComplex& c) {
  if (!alpha.is_integral()) throw InputError("initial map needs an integer cochain; lift it first");
  if (alpha.degree() != degree) {
    throw InputError("initial map needs a degree " + std::to_string(degree) + " cochain");
  }
  for (const auto& [s, v] : alpha.coefficients()) {
    if (!c.contains(s)) throw InputError("cochain is supported on " + s.to_string() + ", which is not in the complex");
  }
  // includes the alternating-sum identity on every 3-simplex
  if (!is_cocycle(alpha, c)) throw InputError("initial map needs a cocycle");
}

}  // namespace

SphericalTriangle SphericalMapState::triangle(std::size_t i) const {
  const TriangleState& t = triangles[i];
  return {positions[t.corners[0]], positions[t.corners[1]], positions[t.corners[2]],
          t.barycenter,            t.orientation,           t.winding};
}

std::size_t SphericalMapState::local_index(Vertex v) const { return lookup(vertex_ids, v); }

double CircularMapState::signed_arc(std::size_t e) const {
  const EdgeState& s = edges[e];
  return wrap_pi(angles[s.b] - angles[s.a]) + 2.0 * kPi * s.winding;
}

std::size_t CircularMapState::local_index(Vertex v) const { return lookup(vertex_ids, v); }

SphericalMapState initial_spherical_map(const Cochain& alpha, const FilteredComplex& c, const SpherePoint& basepoint) {
  check_cocycle_input(alpha, 2, c);
  if (std::abs(basepoint.norm() - 1.0) > 1e-9) throw InputError("basepoint must lie on the unit sphere");
  SphericalMapState m;
  m.complex = skeleton(c, 2);
  m.vertex_ids = m.complex.vertices();
  m.basepoint = basepoint;
  m.positions.assign(m.vertex_ids.size(), basepoint);
  for (std::size_t i : m.complex.indices(2)) {
    TriangleState t;
    t.simplex = m.complex[i].simplex;
    for (std::size_t k = 0; k < 3; ++k) t.corners[k] = m.local_index(t.simplex[k]);
    const std::int64_t n = alpha[t.simplex];
    t.winding = static_cast<int>(n);
    if (n != 0) {
      t.barycenter = -basepoint;
      t.orientation = n > 0 ? 1 : -1;
    } else {
      t.barycenter = basepoint;
    }
    m.triangles.push_back(t);
  }
  return m;
}

CircularMapState initial_circular_map(const Cochain& alpha, const FilteredComplex& c, double base_angle) {
  check_cocycle_input(alpha, 1, c);
  CircularMapState m;
  m.complex = skeleton(c, 1);
  m.vertex_ids = m.complex.vertices();
  m.angles.assign(m.vertex_ids.size(), wrap_two_pi(base_angle));
  for (std::size_t i : m.complex.indices(1)) {
    EdgeState e;
    e.simplex = m.complex[i].simplex;
    e.a = m.local_index(e.simplex[0]);
    e.b = m.local_index(e.simplex[1]);
    e.winding = static_cast<int>(alpha[e.simplex]);
    m.edges.push_back(e);
  }
  return m;
}

CoordinateTable extract_coordinates(const SphericalMapState& m) {
  CoordinateTable t;
  t.ids = m.vertex_ids;
  t.values.resize(static_cast<Eigen::Index>(m.positions.size()), 2);
  for (std::size_t i = 0; i < m.positions.size(); ++i) {
    const auto [az, el] = to_spherical(m.positions[i]);
    t.values(static_cast<Eigen::Index>(i), 0) = az;
    t.values(static_cast<Eigen::Index>(i), 1) = el;
  }
  return t;
}

CoordinateTable extract_coordinates(const CircularMapState& m) {
  CoordinateTable t;
  t.ids = m.vertex_ids;
  t.values.resize(static_cast<Eigen::Index>(m.angles.size()), 1);
  for (std::size_t i = 0; i < m.angles.size(); ++i) t.values(static_cast<Eigen::Index>(i), 0) = wrap_two_pi(m.angles[i]);
  return t;
}

std::optional<std::map<Simplex, std::int64_t>> fundamental_cycle(const FilteredComplex& c) {
  const auto& tris = c.indices(2);
  if (tris.empty()) return std::nullopt;
  // incidence sign of edge facet k in the boundary of a triangle: (-1)^k
  std::unordered_map<Simplex, std::vector<std::pair<std::size_t, int>>, SimplexHash> edge_faces;
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const Simplex& s = c[tris[t]].simplex;
    for (std::size_t k = 0; k < 3; ++k) edge_faces[s.facet(k)].push_back({t, k % 2 == 0 ? 1 : -1});
  }
  for (std::size_t e : c.indices(1)) {
    auto it = edge_faces.find(c[e].simplex);
    if (it == edge_faces.end() || it->second.size() != 2) return std::nullopt;
  }
  std::vector<int> sign(tris.size(), 0);
  sign[0] = 1;
  std::deque<std::size_t> queue{0};
  std::size_t seen = 1;
  while (!queue.empty()) {
    const std::size_t t = queue.front();
    queue.pop_front();
    const Simplex& s = c[tris[t]].simplex;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& inc = edge_faces[s.facet(k)];
      const auto& self = inc[0].first == t ? inc[0] : inc[1];
      const auto& other = inc[0].first == t ? inc[1] : inc[0];
      const int want = -sign[t] * self.second * other.second;
      if (sign[other.first] == 0) {
        sign[other.first] = want;
        ++seen;
        queue.push_back(other.first);
      } else if (sign[other.first] != want) {
        return std::nullopt;
      }
    }
  }
  if (seen != tris.size()) return std::nullopt;
  std::map<Simplex, std::int64_t> out;
  for (std::size_t t = 0; t < tris.size(); ++t) out[c[tris[t]].simplex] = sign[t];
  return out;
}

double map_degree(const SphericalMapState& m, const std::map<Simplex, std::int64_t>& cycle) {
  double sum = 0.0;
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    auto it = cycle.find(m.triangles[i].simplex);
    if (it != cycle.end()) sum += static_cast<double>(it->second) * signed_area(m.triangle(i));
  }
  return sum / kFourPi;
}

}  // namespace sphcoord

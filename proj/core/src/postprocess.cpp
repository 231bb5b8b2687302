#include "sphcoord/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sphcoord/errors.hpp"

namespace sphcoord {

SphericalMapState prune(const SphericalMapState& m, double threshold) {
  if (!(threshold >= 0.0)) throw InputError("prune threshold must be >= 0");
  std::vector<bool> had(m.vertex_ids.size(), false), has(m.vertex_ids.size(), false);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const bool keep = area(m.triangle(i)) >= threshold;
    for (std::size_t c : m.triangles[i].corners) {
      had[c] = true;
      if (keep) has[c] = true;
    }
    if (keep) kept.push_back(i);
  }
  if (kept.empty()) throw TopologyError("no significant simplices remain");

  std::vector<bool> alive(m.vertex_ids.size());
  std::set<Vertex> alive_ids;
  for (std::size_t v = 0; v < alive.size(); ++v) {
    alive[v] = has[v] || !had[v];
    if (alive[v]) alive_ids.insert(m.vertex_ids[v]);
  }
  std::set<Simplex> kept_tris;
  for (std::size_t i : kept) kept_tris.insert(m.triangles[i].simplex);

  std::vector<FilteredSimplex> list;
  for (const auto& fs : m.complex.simplices()) {
    const Simplex& s = fs.simplex;
    if (s.dim() == 2 && !kept_tris.count(s)) continue;
    const bool vertices_alive = std::all_of(s.vertices().begin(), s.vertices().end(),
                                            [&](Vertex v) { return alive_ids.count(v) > 0; });
    if (vertices_alive) list.push_back(fs);
  }

  SphericalMapState out;
  out.complex = FilteredComplex(std::move(list), m.complex.scale_limit());
  out.vertex_ids = out.complex.vertices();
  out.basepoint = m.basepoint;
  out.iteration = m.iteration;
  for (Vertex v : out.vertex_ids) out.positions.push_back(m.positions[m.local_index(v)]);
  for (std::size_t i : kept) {
    TriangleState t = m.triangles[i];
    for (std::size_t k = 0; k < 3; ++k) t.corners[k] = out.local_index(t.simplex[k]);
    out.triangles.push_back(t);
  }
  return out;
}

MinimizeResult<SphericalMapState> prune_and_rerun(const SphericalMapState& m, const EnergyConfig& e,
                                                  const OptimizerConfig& o, double threshold) {
  return minimize_spherical(prune(m, threshold), e, o);
}

RecoveryMetrics evaluate_recovery(const CoordinateTable& final, const CoordinateTable& truth) {
  if (final.values.rows() != truth.values.rows()) throw InputError("coordinate tables have different lengths");
  if (final.values.cols() != truth.values.cols()) throw InputError("coordinate tables have different kinds");
  if (final.values.rows() == 0) throw InputError("coordinate tables are empty");
  const Eigen::Index n = final.values.rows();
  RecoveryMetrics out;
  out.aligned.ids = final.ids;
  out.aligned.values.resize(n, final.values.cols());

  if (final.spherical()) {
    std::vector<SpherePoint> a, b;
    for (Eigen::Index i = 0; i < n; ++i) {
      a.push_back(from_spherical(final.values(i, 0), final.values(i, 1)));
      b.push_back(from_spherical(truth.values(i, 0), truth.values(i, 1)));
    }
    const Eigen::Matrix3d q = procrustes_align(a, b);
    out.reflected = q.determinant() < 0;
    double sq = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const SpherePoint p = normalized(q * a[static_cast<std::size_t>(i)]);
      const double err = geodesic_distance(p, b[static_cast<std::size_t>(i)]);
      sq += err * err;
      out.max_geodesic = std::max(out.max_geodesic, err);
      const auto [az, el] = to_spherical(p);
      out.aligned.values(i, 0) = az;
      out.aligned.values(i, 1) = el;
    }
    out.rms_geodesic = std::sqrt(sq / static_cast<double>(n));
    return out;
  }

  if (final.values.cols() != 1) throw InputError("coordinate tables must have 1 or 2 value columns");
  bool first = true;
  for (int sign : {1, -1}) {
    double sx = 0.0, sy = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double d = truth.values(i, 0) - sign * final.values(i, 0);
      sx += std::cos(d);
      sy += std::sin(d);
    }
    const double rot = std::atan2(sy, sx);
    double sq = 0.0, mx = 0.0;
    Eigen::VectorXd aligned(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      aligned(i) = wrap_two_pi(sign * final.values(i, 0) + rot);
      const double err = std::abs(wrap_pi(aligned(i) - truth.values(i, 0)));
      sq += err * err;
      mx = std::max(mx, err);
    }
    const double rms = std::sqrt(sq / static_cast<double>(n));
    if (first || rms < out.rms_geodesic) {
      out.rms_geodesic = rms;
      out.max_geodesic = mx;
      out.aligned.values.col(0) = aligned;
      out.reflected = sign < 0;
      first = false;
    }
  }
  return out;
}

}  // namespace sphcoord

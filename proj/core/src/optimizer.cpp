#include "sphcoord/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "sphcoord/errors.hpp"

namespace sphcoord {

namespace {

constexpr double kTinyExcess = 1e-14;

struct Snapshot {
  std::vector<SpherePoint> positions;
  std::vector<TriangleState> triangles;
};

Snapshot take(const SphericalMapState& m) { return {m.positions, m.triangles}; }

void restore(SphericalMapState& m, const Snapshot& s) {
  m.positions = s.positions;
  m.triangles = s.triangles;
}

std::vector<SpherePoint> barycenters(const std::vector<TriangleState>& ts) {
  std::vector<SpherePoint> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(t.barycenter);
  return out;
}

double max_move(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, (a[i] - b[i]).norm());
  return best;
}

/// Re-derives barycenters and orientations after the vertices moved. A wound
/// triangle unwinds as soon as its vertices span a proper triangle; its
/// barycenter, still near the antipode of the cluster, then selects the large
/// complementary region.
void refresh_triangles(SphericalMapState& m) {
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    TriangleState& ts = m.triangles[i];
    if (ts.winding != 0) {
      const SphericalTriangle t = m.triangle(i);
      if (cone_excess(t.u, t.v, t.w) <= kTinyExcess) continue;
      ts.winding = 0;
    }
    ts.barycenter = update_barycenter(m.triangle(i));
    ts.orientation = refresh_orientation(m.triangle(i));
  }
}

bool any_wound(const SphericalMapState& m) {
  return std::any_of(m.triangles.begin(), m.triangles.end(), [](const TriangleState& t) { return t.winding != 0; });
}

void check_finite(double energy, const std::vector<SpherePoint>& ps, std::size_t iteration) {
  bool ok = std::isfinite(energy);
  for (const auto& p : ps) ok = ok && p.allFinite();
  if (!ok) {
    std::ostringstream os;
    os << "non-finite energy or position at iteration " << iteration;
    throw NumericalError(os.str());
  }
}

bool window_converged(const std::vector<double>& trace, std::size_t window, double tol) {
  if (trace.size() <= window) return false;
  const double now = trace.back();
  const double then = trace[trace.size() - 1 - window];
  return std::abs(now - then) <= tol * std::max(std::abs(then), 1e-12);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(delta_g > 0.0)) throw InputError("delta_g must be positive");
  if (!(delta_m > 0.0)) throw InputError("delta_m must be positive");
  if (warmup < 1) throw InputError("warmup must be at least 1");
  if (centering_passes < 1) throw InputError("centering_passes must be at least 1");
  if (!(max_step > 0.0 && max_step < 2.0)) throw InputError("max_step must lie in (0, 2)");
  if (!(tol_energy >= 0.0) || !(tol_center >= 0.0)) throw InputError("tolerances must be non-negative");
  if (energy_window < 1) throw InputError("energy window must be at least 1");
}

bool check_homotopy_guard(const std::vector<SpherePoint>& before, const std::vector<SpherePoint>& after,
                          double max_step) {
  if (before.size() != after.size()) throw InputError("guard needs equally many points before and after");
  const double bound = std::min(max_step, 2.0);
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (!((before[i] - after[i]).norm() < bound)) return false;
  }
  return true;
}

Eigen::Vector3d center_of_mass(const SphericalMapState& m) {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : m.positions) c += p;
  return m.positions.empty() ? c : Eigen::Vector3d(c / static_cast<double>(m.positions.size()));
}

MinimizeResult<SphericalMapState> minimize_spherical(SphericalMapState m, const EnergyConfig& e,
                                                     const OptimizerConfig& o, const SphericalObserver& observer) {
  o.validate();
  e.validate(kFourPi);
  RunReport report;
  double energy = total_energy(m, e);
  check_finite(energy, m.positions, 0);
  report.energy_trace.push_back(energy);

  for (std::size_t it = 0; it < o.max_iters; ++it) {
    const Snapshot start = take(m);
    const std::vector<SpherePoint> start_bary = barycenters(start.triangles);
    const std::vector<Eigen::Vector3d> updates = vertex_updates(m, e, o.threads);
    // descent test only once every triangle has unwound
    const bool wound = any_wound(m);

    double step = o.delta_g;
    bool accepted = false;
    for (std::size_t h = 0; h <= o.max_halvings; ++h, step *= 0.5) {
      for (std::size_t i = 0; i < m.positions.size(); ++i) {
        Eigen::Vector3d d = step * updates[i];
        const double len = d.norm();
        if (len > o.max_step) d *= o.max_step / len;
        m.positions[i] = normalized(m.positions[i] - d);
      }
      refresh_triangles(m);
      const double trial = total_energy(m, e);
      const bool guard = check_homotopy_guard(start.positions, m.positions, o.max_step) &&
                         check_homotopy_guard(start_bary, barycenters(m.triangles), o.max_step);
      if (guard && (wound || trial <= energy)) {
        accepted = true;
        break;
      }
      restore(m, start);
      if (!guard && h == o.max_halvings) {
        throw NumericalError("no gradient step satisfies the displacement guard at iteration " + std::to_string(it));
      }
    }
    (void)accepted;  // an exhausted search leaves the vertices in place

    for (std::size_t pass = 0; it + 1 >= o.warmup && pass < o.centering_passes; ++pass) {
      const double c0 = center_of_mass(m).norm();
      if (pass > 0 && c0 < o.tol_center) break;
      const Snapshot before_mobius = take(m);
      double dm = o.delta_m;
      for (std::size_t h = 0; h <= o.max_halvings; ++h, dm *= 0.5) {
        const Eigen::Vector3d c = center_of_mass(m);
        auto shift = [&](SpherePoint& p) {
          const SpherePoint q = p - dm * c;
          if (q.norm() > 1e-12) p = q.normalized();
        };
        for (auto& p : m.positions) shift(p);
        for (auto& t : m.triangles) shift(t.barycenter);
        refresh_triangles(m);
        if (check_homotopy_guard(start.positions, m.positions, o.max_step) &&
            check_homotopy_guard(start_bary, barycenters(m.triangles), o.max_step)) {
          break;
        }
        restore(m, before_mobius);
        if (h == o.max_halvings) {
          throw NumericalError("no centering step satisfies the displacement guard at iteration " +
                               std::to_string(it));
        }
      }
      if (pass > 0 && !(center_of_mass(m).norm() < c0)) {
        restore(m, before_mobius);
        break;
      }
    }

    report.max_displacement = std::max({report.max_displacement, max_move(start.positions, m.positions),
                                        max_move(start_bary, barycenters(m.triangles))});
    energy = total_energy(m, e);
    check_finite(energy, m.positions, it + 1);
    report.energy_trace.push_back(energy);
    ++m.iteration;
    report.iterations = it + 1;
    if (observer) observer(m);

    report.final_center_norm = center_of_mass(m).norm();
    if (window_converged(report.energy_trace, o.energy_window, o.tol_energy) &&
        report.final_center_norm < o.tol_center) {
      report.converged = true;
      break;
    }
  }
  report.final_center_norm = center_of_mass(m).norm();
  return {std::move(m), std::move(report)};
}

MinimizeResult<CircularMapState> minimize_circular(CircularMapState m, const EnergyConfig& e,
                                                   const OptimizerConfig& o) {
  o.validate();
  e.validate(2.0 * kPi);
  RunReport report;
  double energy = total_energy_1d(m, e);
  if (!std::isfinite(energy)) throw NumericalError("non-finite energy at iteration 0");
  report.energy_trace.push_back(energy);

  for (std::size_t it = 0; it < o.max_iters; ++it) {
    const std::vector<double> updates = vertex_updates_1d(m, e);
    const std::vector<double> angles0 = m.angles;
    std::vector<double> arcs0(m.edges.size());
    for (std::size_t k = 0; k < m.edges.size(); ++k) arcs0[k] = m.signed_arc(k);
    const std::vector<EdgeState> edges0 = m.edges;

    double step = o.delta_g;
    double moved = 0.0;
    for (std::size_t h = 0; h <= o.max_halvings; ++h, step *= 0.5) {
      std::vector<double> delta(m.angles.size());
      for (std::size_t i = 0; i < m.angles.size(); ++i) {
        delta[i] = std::clamp(-step * updates[i], -o.max_step, o.max_step);
        m.angles[i] = wrap_two_pi(angles0[i] + delta[i]);
      }
      // keep each edge's arc continuous across the branch cut
      for (std::size_t k = 0; k < m.edges.size(); ++k) {
        EdgeState& ed = m.edges[k];
        const double target = arcs0[k] + delta[ed.b] - delta[ed.a];
        const double base = wrap_pi(m.angles[ed.b] - m.angles[ed.a]);
        ed.winding = static_cast<int>(std::lround((target - base) / (2.0 * kPi)));
      }
      const double trial = total_energy_1d(m, e);
      if (trial <= energy) {
        for (double d : delta) moved = std::max(moved, 2.0 * std::abs(std::sin(0.5 * d)));
        break;
      }
      m.angles = angles0;
      m.edges = edges0;
    }
    report.max_displacement = std::max(report.max_displacement, moved);
    energy = total_energy_1d(m, e);
    if (!std::isfinite(energy)) throw NumericalError("non-finite energy at iteration " + std::to_string(it + 1));
    report.energy_trace.push_back(energy);
    ++m.iteration;
    report.iterations = it + 1;
    if (window_converged(report.energy_trace, o.energy_window, o.tol_energy)) {
      report.converged = true;
      break;
    }
  }
  return {std::move(m), std::move(report)};
}

CircularMapState harmonic_representative_1d(const Cochain& alpha, const FilteredComplex& c) {
  CircularMapState m = initial_circular_map(alpha, c, 0.0);
  const std::size_t n = m.vertex_ids.size();

  // connected components; the smallest vertex of each is pinned at h = 0
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& ed : m.edges) {
    const std::size_t ra = find(ed.a), rb = find(ed.b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<long> unknown(n, -1);
  long count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (find(i) != i) unknown[i] = count++;
  }

  std::vector<double> h(n, 0.0);
  if (count > 0) {
    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(count);
    for (const auto& ed : m.edges) {
      const long ia = unknown[ed.a], ib = unknown[ed.b];
      const double a = static_cast<double>(ed.winding);
      // (d h)(ab) = h_b - h_a; normal equations L h = d^T alpha
      if (ia >= 0) {
        trips.emplace_back(ia, ia, 1.0);
        rhs(ia) -= a;
      }
      if (ib >= 0) {
        trips.emplace_back(ib, ib, 1.0);
        rhs(ib) += a;
      }
      if (ia >= 0 && ib >= 0) {
        trips.emplace_back(ia, ib, -1.0);
        trips.emplace_back(ib, ia, -1.0);
      }
    }
    Eigen::SparseMatrix<double> lap(count, count);
    lap.setFromTriplets(trips.begin(), trips.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(lap);
    if (solver.info() != Eigen::Success) throw NumericalError("graph Laplacian factorization failed");
    const Eigen::VectorXd sol = solver.solve(rhs);
    if (solver.info() != Eigen::Success || !sol.allFinite()) throw NumericalError("graph Laplacian solve failed");
    for (std::size_t i = 0; i < n; ++i) {
      if (unknown[i] >= 0) h[i] = sol(unknown[i]);
    }
  }

  for (std::size_t i = 0; i < n; ++i) m.angles[i] = wrap_two_pi(-2.0 * kPi * h[i]);
  for (auto& ed : m.edges) {
    const double arc = 2.0 * kPi * (static_cast<double>(ed.winding) - (h[ed.b] - h[ed.a]));
    const double base = wrap_pi(m.angles[ed.b] - m.angles[ed.a]);
    ed.winding = static_cast<int>(std::lround((arc - base) / (2.0 * kPi)));
  }
  return m;
}

}  // namespace sphcoord

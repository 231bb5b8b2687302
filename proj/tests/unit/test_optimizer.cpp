#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "sphcoord/errors.hpp"
#include "sphcoord/optimizer.hpp"

using namespace sphcoord;

namespace {

SphericalMapState wound_tetrahedron(const SpherePoint& base = SpherePoint(1, 0, 0)) {
  Cochain a = Cochain::integral(2);
  a.set(Simplex{0, 1, 2}, 1);
  return initial_spherical_map(a, fixtures::tetrahedron_surface(), base);
}

FilteredComplex cycle_complex(std::size_t n) {
  std::vector<FilteredSimplex> listed;
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = static_cast<Vertex>(i), b = static_cast<Vertex>((i + 1) % n);
    listed.push_back({Simplex{a, b}, 1.0});
  }
  return load_complex(std::move(listed));
}

double spherical_rms_after_alignment(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b) {
  const Eigen::Matrix3d q = procrustes_align(a, b);
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sq += std::pow(geodesic_distance(normalized(q * a[i]), b[i]), 2);
  return std::sqrt(sq / static_cast<double>(a.size()));
}

}  // namespace

TEST(OptimizerConfig, Validation) {
  EXPECT_NO_THROW(OptimizerConfig{}.validate());
  OptimizerConfig o;
  o.max_step = 2.0;
  EXPECT_THROW(o.validate(), InputError);
  o = {};
  o.delta_g = 0.0;
  EXPECT_THROW(o.validate(), InputError);
  o = {};
  o.centering_passes = 0;
  EXPECT_THROW(o.validate(), InputError);
}

TEST(HomotopyGuard, RejectsLargeMoves) {
  const std::vector<SpherePoint> a{SpherePoint(1, 0, 0)};
  EXPECT_TRUE(check_homotopy_guard(a, {normalized(SpherePoint(1, 0.1, 0))}, 1.0));
  EXPECT_FALSE(check_homotopy_guard(a, {SpherePoint(0, 1, 0)}, 1.0));
  EXPECT_FALSE(check_homotopy_guard(a, {SpherePoint(-1, 0, 0)}, 5.0));
}

TEST(MinimizeSpherical, TetrahedronSplitsTheSphereEvenly) {
  const auto r = minimize_spherical(wound_tetrahedron(), EnergyConfig::harmonic(), OptimizerConfig{});
  ASSERT_TRUE(r.report.converged);
  for (std::size_t i = 0; i < r.state.triangles.size(); ++i) {
    EXPECT_EQ(r.state.triangles[i].winding, 0);
    EXPECT_NEAR(area(r.state.triangle(i)), kPi, 0.05 * kPi);
  }
  EXPECT_NEAR(r.report.energy_trace.back(), 2 * kPi * kPi, 0.05 * 2 * kPi * kPi);
  EXPECT_LT(r.report.final_center_norm, OptimizerConfig{}.tol_center);
  EXPECT_LT(r.report.max_displacement, 2.0);
  EXPECT_EQ(r.report.energy_trace.size(), r.report.iterations + 1);
}

TEST(MinimizeSpherical, ResultDoesNotDependOnTheBasepointUpToRotation) {
  const auto a = minimize_spherical(wound_tetrahedron(SpherePoint(1, 0, 0)), EnergyConfig::harmonic(), {});
  const auto b = minimize_spherical(wound_tetrahedron(SpherePoint(0, 0, 1)), EnergyConfig::harmonic(), {});
  EXPECT_LT(spherical_rms_after_alignment(a.state.positions, b.state.positions), 1e-3);
}

TEST(MinimizeSpherical, OptimumIsNearlyAFixedPoint) {
  const auto first = minimize_spherical(wound_tetrahedron(), EnergyConfig::harmonic(), {});
  OptimizerConfig o;
  o.max_iters = 100;
  const auto again = minimize_spherical(first.state, EnergyConfig::harmonic(), o);
  EXPECT_LT(spherical_rms_after_alignment(first.state.positions, again.state.positions), 1e-2);
  EXPECT_LE(again.report.energy_trace.back(), first.report.energy_trace.back() * (1 + 1e-3));
}

TEST(MinimizeSpherical, ObserverSeesEveryIteration) {
  std::size_t calls = 0;
  OptimizerConfig o;
  o.max_iters = 30;
  const auto r = minimize_spherical(wound_tetrahedron(), EnergyConfig::harmonic(), o,
                                    [&](const SphericalMapState&) { ++calls; });
  EXPECT_EQ(calls, r.report.iterations);
}

TEST(MinimizeCircular, EvenlySpacedCycle) {
  const std::size_t n = 8;
  Cochain a = Cochain::integral(1);
  a.set(Simplex{0, 1}, 1);
  OptimizerConfig o;
  o.tol_energy = 1e-12;
  o.max_iters = 20000;
  const auto r = minimize_circular(initial_circular_map(a, cycle_complex(n)), EnergyConfig::harmonic(), o);
  for (std::size_t e = 0; e < r.state.edges.size(); ++e)
    EXPECT_NEAR(std::abs(r.state.signed_arc(e)), 2 * kPi / n, 1e-3);
}

TEST(MinimizeCircular, ZeroWindingCollapses) {
  const std::size_t n = 6;
  const FilteredComplex c = cycle_complex(n);
  CircularMapState m = initial_circular_map(Cochain::integral(1), c);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (double& t : m.angles) t = wrap_two_pi(1.0 + u(rng));
  const auto r = minimize_circular(m, EnergyConfig::harmonic(), {});
  EXPECT_LT(r.report.energy_trace.back(), 1e-6);
}

// Starting near the even spread; the collapsed canonical start can fold.
TEST(MinimizeCircular, SpringAtEqualShareReachesZeroEnergy) {
  const std::size_t n = 10;
  Cochain a = Cochain::integral(1);
  a.set(Simplex{3, 4}, 1);
  CircularMapState m = harmonic_representative_1d(a, cycle_complex(n));
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  for (double& t : m.angles) t = wrap_two_pi(t + u(rng));
  const EnergyConfig e = EnergyConfig::spring(1.0, 2 * kPi / n);
  ASSERT_GT(total_energy_1d(m, e), 1e-3);
  const auto r = minimize_circular(m, e, {});
  EXPECT_LT(r.report.energy_trace.back(), 1e-6);
}

TEST(HarmonicRepresentative, ClosedFormOnACycle) {
  const std::size_t n = 7;
  const FilteredComplex c = cycle_complex(n);
  Cochain a = Cochain::integral(1);
  a.set(Simplex{2, 3}, 1);
  const CircularMapState m = harmonic_representative_1d(a, c);
  for (std::size_t e = 0; e < m.edges.size(); ++e) EXPECT_NEAR(std::abs(m.signed_arc(e)), 2 * kPi / n, 1e-9);
}

TEST(HarmonicRepresentative, ExactCochainGivesConstantMap) {
  const FilteredComplex c = cycle_complex(5);
  Cochain h = Cochain::integral(0);
  h.set(Simplex{1}, 2);
  h.set(Simplex{3}, -1);
  const CircularMapState m = harmonic_representative_1d(coboundary(h, c), c);
  for (std::size_t e = 0; e < m.edges.size(); ++e) EXPECT_NEAR(m.signed_arc(e), 0.0, 1e-9);
}

TEST(CenterOfMass, IsTheMean) {
  SphericalMapState m;
  m.vertex_ids = {0, 1};
  m.positions = {SpherePoint(1, 0, 0), SpherePoint(0, 1, 0)};
  EXPECT_LT((center_of_mass(m) - Eigen::Vector3d(0.5, 0.5, 0)).norm(), 1e-15);
}

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "sphcoord/cohomology.hpp"
#include "sphcoord/energy.hpp"
#include "sphcoord/errors.hpp"
#include "sphcoord/mapping.hpp"

using namespace sphcoord;

namespace {

struct OctahedronCocycle {
  FilteredComplex complex;
  Cochain alpha;
};

OctahedronCocycle octahedron_cocycle() {
  const FilteredComplex c = fixtures::octahedron_surface();
  const Barcode b = compute_barcode(c, 2, 47);
  const double eps = default_epsilon(b.bars[0], b.scale_limit);
  const FilteredComplex sub = restrict(c, eps);
  return {sub, lift_to_integers(cocycle_at(b.bars[0], c, eps), sub)};
}

/// Enumerates all 2^8 sign patterns and keeps those whose boundary vanishes.
std::vector<std::map<Simplex, std::int64_t>> brute_force_cycles(const FilteredComplex& c) {
  std::vector<Simplex> tris;
  for (std::size_t i : c.indices(2)) tris.push_back(c[i].simplex);
  std::vector<std::map<Simplex, std::int64_t>> out;
  for (unsigned mask = 0; mask < (1u << tris.size()); ++mask) {
    std::map<Simplex, std::int64_t> boundary;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      const int s = (mask >> t) & 1u ? 1 : -1;
      for (std::size_t k = 0; k < 3; ++k) boundary[tris[t].facet(k)] += (k % 2 == 0 ? 1 : -1) * s;
    }
    bool closed = true;
    for (const auto& [e, v] : boundary) closed = closed && v == 0;
    if (!closed) continue;
    std::map<Simplex, std::int64_t> cycle;
    for (std::size_t t = 0; t < tris.size(); ++t) cycle[tris[t]] = (mask >> t) & 1u ? 1 : -1;
    out.push_back(cycle);
  }
  return out;
}

}  // namespace

TEST(InitialMap, ZeroCochainIsDegenerate) {
  const FilteredComplex c = fixtures::octahedron_surface();
  const SphericalMapState m = initial_spherical_map(Cochain::integral(2), c);
  EXPECT_EQ(m.positions.size(), 6u);
  EXPECT_EQ(m.triangles.size(), 8u);
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    EXPECT_EQ(m.triangles[i].winding, 0);
    EXPECT_EQ(area(m.triangle(i)), 0.0);
  }
  EXPECT_EQ(total_energy(m, EnergyConfig::harmonic()), 0.0);
}

TEST(InitialMap, SingleWoundFace) {
  const FilteredComplex c = load_complex({{Simplex{0, 1, 2}, 1.0}});
  Cochain a = Cochain::integral(2);
  a.set(Simplex{0, 1, 2}, 1);
  const SphericalMapState m = initial_spherical_map(a, c);
  ASSERT_EQ(m.triangles.size(), 1u);
  EXPECT_EQ(m.triangles[0].winding, 1);
  EXPECT_EQ(m.triangles[0].orientation, 1);
  EXPECT_EQ(m.triangles[0].barycenter, SpherePoint(-1, 0, 0));
  EXPECT_EQ(area(m.triangle(0)), kFourPi);
  EXPECT_NEAR(total_energy(m, EnergyConfig::harmonic()), 0.5 * kFourPi * kFourPi, 1e-12);
}

TEST(InitialMap, ReproducesCanonicalLift) {
  const auto [c, alpha] = octahedron_cocycle();
  const SpherePoint base = SpherePoint(1, 2, 2) / 3.0;
  const SphericalMapState m = initial_spherical_map(alpha, c, base);
  for (const auto& p : m.positions) EXPECT_EQ(p, base);
  for (std::size_t i = 0; i < m.triangles.size(); ++i) {
    const auto& t = m.triangles[i];
    EXPECT_EQ(t.winding, alpha[t.simplex]);
    EXPECT_EQ(area(m.triangle(i)), kFourPi * std::abs(t.winding));
    if (t.winding != 0) EXPECT_EQ(t.barycenter, SpherePoint(-base));
  }
}

TEST(InitialMap, RejectsNonCocyclesAndBadInput) {
  const FilteredComplex c = fixtures::tetrahedron_surface();
  Cochain a = Cochain::integral(2);
  a.set(Simplex{0, 1, 2}, 1);
  // tetrahedron surface has no 3-simplex, so any 2-cochain is a cocycle
  EXPECT_NO_THROW(initial_spherical_map(a, c));
  std::mt19937_64 rng(1);
  const FilteredComplex full = build_vr(fixtures::random_distances(rng, 5), 3, 5.0);
  EXPECT_THROW(initial_spherical_map(a, full), InputError);
  Cochain p(2, 47);
  EXPECT_THROW(initial_spherical_map(p, c), InputError);
  Cochain off = Cochain::integral(2);
  off.set(Simplex{5, 6, 7}, 1);
  EXPECT_THROW(initial_spherical_map(off, c), InputError);
  EXPECT_THROW(initial_spherical_map(Cochain::integral(2), c, SpherePoint(2, 0, 0)), InputError);
}

TEST(InitialMap, AlternatingSumVanishesOnThreeSimplices) {
  std::mt19937_64 rng(8);
  const FilteredComplex c = build_vr(fixtures::random_distances(rng, 8), 3, 2.0);
  const Barcode b = compute_barcode(c, 2, 47);
  for (const Bar& bar : b.bars) {
    const double eps = default_epsilon(bar, b.scale_limit);
    const FilteredComplex sub = restrict(c, eps);
    Cochain z;
    try {
      z = lift_to_integers(cocycle_at(bar, c, eps), sub);
    } catch (const TopologyError&) {
      continue;
    }
    for (std::size_t i : sub.indices(3)) {
      const Simplex& s = sub[i].simplex;
      EXPECT_EQ(z[s.facet(0)] - z[s.facet(1)] + z[s.facet(2)] - z[s.facet(3)], 0);
    }
    EXPECT_NO_THROW(initial_spherical_map(z, sub));
  }
}

TEST(InitialCircularMap, WindingsEqualCoefficients) {
  const FilteredComplex c = load_complex({{Simplex{0, 1}, 1.0}, {Simplex{1, 2}, 1.0}, {Simplex{0, 2}, 1.0}});
  Cochain a = Cochain::integral(1);
  a.set(Simplex{0, 1}, 1);
  const CircularMapState m = initial_circular_map(a, c, 0.5);
  for (double t : m.angles) EXPECT_EQ(t, 0.5);
  int total = 0;
  for (const auto& e : m.edges) total += e.winding;
  EXPECT_EQ(total, 1);
  EXPECT_NEAR(m.signed_arc(0), 2 * kPi, 1e-15);
}

TEST(FundamentalCycle, MatchesSignEnumeration) {
  const FilteredComplex c = fixtures::octahedron_surface();
  const auto cycle = fundamental_cycle(c);
  ASSERT_TRUE(cycle.has_value());
  const auto all = brute_force_cycles(c);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_TRUE(*cycle == all[0] || *cycle == all[1]);
}

TEST(FundamentalCycle, NoneForOpenOrNonManifoldComplexes) {
  EXPECT_FALSE(fundamental_cycle(load_complex({{Simplex{0, 1, 2}, 1.0}})).has_value());
  std::mt19937_64 rng(2);
  EXPECT_FALSE(fundamental_cycle(build_vr(fixtures::random_distances(rng, 6), 2, 5.0)).has_value());
  EXPECT_TRUE(fundamental_cycle(fixtures::tetrahedron_surface()).has_value());
}

TEST(MapDegree, InitialDegreeEqualsPairing) {
  const auto [c, alpha] = octahedron_cocycle();
  const SphericalMapState m = initial_spherical_map(alpha, c);
  const auto cycle = fundamental_cycle(m.complex);
  ASSERT_TRUE(cycle.has_value());
  EXPECT_NEAR(map_degree(m, *cycle), static_cast<double>(evaluate(alpha, *cycle)), 1e-12);
  EXPECT_EQ(std::abs(evaluate(alpha, *cycle)), 1);
}

TEST(Coordinates, ConventionsAndRoundTrip) {
  SphericalMapState m;
  m.vertex_ids = {0, 1, 2};
  m.positions = {SpherePoint(0, 0, 1), SpherePoint(1, 0, 0), normalized(SpherePoint(1, -2, 0.5))};
  const CoordinateTable t = extract_coordinates(m);
  ASSERT_TRUE(t.spherical());
  EXPECT_NEAR(t.values(0, 1), kPi / 2, 1e-15);
  EXPECT_EQ(t.values(1, 0), 0.0);
  EXPECT_EQ(t.values(1, 1), 0.0);
  for (Eigen::Index i = 0; i < 3; ++i)
    EXPECT_LT((from_spherical(t.values(i, 0), t.values(i, 1)) - m.positions[static_cast<std::size_t>(i)]).norm(),
              1e-12);

  CircularMapState cm;
  cm.vertex_ids = {4};
  cm.angles = {3 * kPi / 2};
  const CoordinateTable ct = extract_coordinates(cm);
  EXPECT_FALSE(ct.spherical());
  EXPECT_NEAR(ct.values(0, 0), 3 * kPi / 2, 1e-15);
  EXPECT_EQ(ct.ids[0], 4);
}

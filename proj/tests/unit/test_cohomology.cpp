#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "sphcoord/cohomology.hpp"
#include "sphcoord/errors.hpp"
#include "sphcoord/mapping.hpp"
#include "sphcoord/synth.hpp"

using namespace sphcoord;

namespace {

std::set<double> filtration_values(const FilteredComplex& c) {
  std::set<double> out;
  for (const auto& s : c.simplices()) out.insert(s.value);
  return out;
}

FilteredComplex circle_complex(std::size_t n) {
  const Dataset d = gen_circle(n, 0.0, 1);
  return build_vr(DistanceMatrix::euclidean(d.cloud), 2, 2.0);
}

}  // namespace

TEST(Cochain, ReducesModP) {
  Cochain f(1, 7);
  f.set(Simplex{0, 1}, -1);
  EXPECT_EQ(f[(Simplex{0, 1})], 6);
  f.add(Simplex{0, 1}, 1);
  EXPECT_TRUE(f.is_zero());
  Cochain z = Cochain::integral(1);
  z.set(Simplex{0, 1}, -3);
  EXPECT_EQ(z[(Simplex{0, 1})], -3);
}

TEST(Cochain, CoboundaryOfVertexFunction) {
  const FilteredComplex c = fixtures::tetrahedron_surface();
  Cochain h = Cochain::integral(0);
  h.set(Simplex{1}, 5);
  const Cochain dh = coboundary(h, c);
  EXPECT_EQ(dh[(Simplex{0, 1})], 5);
  EXPECT_EQ(dh[(Simplex{1, 2})], -5);
  EXPECT_TRUE(is_cocycle(dh, c));
}

TEST(Barcode, RejectsNonPrime) {
  EXPECT_THROW(compute_barcode(fixtures::octahedron_surface(), 2, 8), InputError);
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(65537));
}

TEST(Barcode, CircleHasOneLongOneDimensionalBar) {
  const Barcode b = compute_barcode(circle_complex(12), 1, 47);
  ASSERT_FALSE(b.bars.empty());
  const Bar& longest = select_bar(b);
  EXPECT_NEAR(longest.birth, 2.0 * std::sin(kPi / 12.0), 1e-9);
  EXPECT_GT(b.persistence(longest), 0.5);
}

TEST(Barcode, OctahedronHasEssentialTwoDimensionalBar) {
  const Barcode b = compute_barcode(fixtures::octahedron_surface(), 2, 47);
  ASSERT_EQ(b.bars.size(), 1u);
  EXPECT_TRUE(b.bars[0].essential());
  EXPECT_NEAR(b.bars[0].birth, std::sqrt(2.0), 1e-12);
  EXPECT_EQ(b.bars[0].representative.support_size() > 0, true);
}

TEST(Barcode, SortedByPersistence) {
  std::mt19937_64 rng(11);
  const FilteredComplex c = build_vr(fixtures::random_distances(rng, 8), 3, 2.0);
  for (int dim = 0; dim <= 2; ++dim) {
    const Barcode b = compute_barcode(c, dim, 47);
    for (std::size_t i = 1; i < b.bars.size(); ++i)
      EXPECT_GE(b.persistence(b.bars[i - 1]), b.persistence(b.bars[i]));
  }
}

// Bars alive at every filtration value against ranks of boundary matrices.
TEST(Barcode, MatchesBruteForceBetti) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(trial % 5);
    const FilteredComplex c = build_vr(fixtures::random_distances(rng, n), 3, 2.0);
    for (const std::uint32_t p : {2u, 3u, 47u}) {
      for (int dim = 0; dim <= 2; ++dim) {
        const Barcode b = compute_barcode(c, dim, p);
        for (double t : filtration_values(c)) {
          ASSERT_EQ(b.alive_at(t), fixtures::brute_betti(c, dim, t, p))
              << "trial " << trial << " p " << p << " dim " << dim << " t " << t;
        }
      }
    }
  }
}

TEST(Barcode, RepresentativesAreCocyclesAcrossTheirLifetime) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const FilteredComplex c = build_vr(fixtures::random_distances(rng, 8), 3, 2.0);
    for (int dim = 1; dim <= 2; ++dim) {
      const Barcode b = compute_barcode(c, dim, 47);
      for (const Bar& bar : b.bars) {
        const double eps = default_epsilon(bar, b.scale_limit);
        EXPECT_TRUE(is_cocycle(cocycle_at(bar, c, eps), restrict(c, eps)));
      }
    }
  }
}

TEST(BarSelection, Parses) {
  EXPECT_EQ(BarSelection::parse("longest").kind, BarSelection::Kind::kLongest);
  EXPECT_EQ(BarSelection::parse("shortest").kind, BarSelection::Kind::kShortest);
  const auto idx = BarSelection::parse("index:2");
  EXPECT_EQ(idx.kind, BarSelection::Kind::kIndex);
  EXPECT_EQ(idx.index, 2u);
  EXPECT_EQ(BarSelection::parse("3").index, 3u);
  const auto iv = BarSelection::parse("0.5,inf");
  EXPECT_EQ(iv.kind, BarSelection::Kind::kInterval);
  EXPECT_TRUE(std::isinf(iv.death));
  EXPECT_THROW(BarSelection::parse("widest"), InputError);
  EXPECT_THROW(BarSelection::parse("a,b"), InputError);
}

TEST(SelectBar, StrategiesAndErrors) {
  Barcode b;
  b.dimension = 1;
  b.scale_limit = 10.0;
  auto bar = [](double birth, double death) {
    Bar x;
    x.dimension = 1;
    x.birth = birth;
    x.death = death;
    x.death_simplex = 0;
    return x;
  };
  b.bars = {bar(0.0, 5.0), bar(1.0, 2.0), bar(0.5, 1.5)};
  EXPECT_DOUBLE_EQ(select_bar(b).birth, 0.0);
  EXPECT_DOUBLE_EQ(select_bar(b, BarSelection::parse("shortest")).birth, 0.5);
  EXPECT_DOUBLE_EQ(select_bar(b, BarSelection::parse("index:1")).birth, 1.0);
  EXPECT_DOUBLE_EQ(select_bar(b, BarSelection::parse("0.9,2.1")).birth, 1.0);
  EXPECT_THROW(select_bar(b, BarSelection::parse("index:3")), TopologyError);
  Barcode empty;
  empty.dimension = 2;
  EXPECT_THROW(select_bar(empty), TopologyError);
}

TEST(DefaultEpsilon, MidpointAndFraction) {
  Bar b;
  b.birth = 1.0;
  b.death = 3.0;
  b.death_simplex = 0;
  EXPECT_DOUBLE_EQ(default_epsilon(b, 10.0), 2.0);
  EXPECT_DOUBLE_EQ(default_epsilon(b, 10.0, 0.25), 1.5);
  Bar e;
  e.birth = 1.0;
  EXPECT_DOUBLE_EQ(default_epsilon(e, 5.0), 3.0);
  EXPECT_THROW(default_epsilon(b, 10.0, 1.0), InputError);
}

TEST(CocycleAt, OctahedronPairsWithFundamentalClass) {
  const FilteredComplex c = fixtures::octahedron_surface();
  const Barcode b = compute_barcode(c, 2, 47);
  const Bar& bar = select_bar(b);
  const double eps = default_epsilon(bar, b.scale_limit);
  const Cochain a = cocycle_at(bar, c, eps);
  EXPECT_TRUE(coboundary(a, restrict(c, eps)).is_zero());
  const Cochain z = lift_to_integers(a, restrict(c, eps));
  const auto cycle = fundamental_cycle(restrict(c, eps));
  ASSERT_TRUE(cycle.has_value());
  EXPECT_EQ(std::abs(evaluate(z, *cycle)), 1);
}

TEST(CocycleAt, OutsideLifetimeIsInputError) {
  const FilteredComplex c = fixtures::octahedron_surface();
  const Barcode b = compute_barcode(c, 2, 47);
  EXPECT_THROW(cocycle_at(b.bars[0], c, 1.0), InputError);
}

TEST(Lift, CoefficientsAreCentredAndIntegral) {
  const FilteredComplex c = circle_complex(10);
  const Barcode b = compute_barcode(c, 1, 47);
  const Bar& bar = select_bar(b);
  const double eps = default_epsilon(bar, b.scale_limit);
  const FilteredComplex sub = restrict(c, eps);
  const Cochain z = lift_to_integers(cocycle_at(bar, c, eps), sub);
  EXPECT_TRUE(z.is_integral());
  EXPECT_TRUE(is_cocycle(z, sub));
  for (const auto& [s, v] : z.coefficients()) {
    EXPECT_GE(v, -23);
    EXPECT_LE(v, 23);
  }
}

TEST(Lift, FailsWhenIntegerCocycleConditionBreaks) {
  // a(12) - a(02) + a(01) = 1 - 2 + 1 vanishes mod 3 but not after lifting 2 -> -1.
  const FilteredComplex c = load_complex({{Simplex{0, 1, 2}, 1.0}});
  Cochain a(1, 3);
  a.set(Simplex{0, 1}, 1);
  a.set(Simplex{1, 2}, 1);
  a.set(Simplex{0, 2}, 2);
  ASSERT_TRUE(is_cocycle(a, c));
  EXPECT_THROW(lift_to_integers(a, c), TopologyError);
}

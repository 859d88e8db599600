#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "varberg/disk_index.hpp"
#include "varberg/geometry.hpp"
#include "varberg/measure.hpp"
#include "varberg/random.hpp"

using namespace varberg;

namespace {

LebesgueSpec small_spec(int radial = 64, int angular = 96, double kappa = 0.0) {
  LebesgueSpec s;
  s.radial = radial;
  s.angular = angular;
  s.kappa = kappa;
  s.rho_max = 1.0 - 1e-4;
  s.grade_until = 0.999;
  return s;
}

std::size_t brute_count(const QuadMeasure& mu, cplx a, double s) {
  std::size_t c = 0;
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (in_ball_1d(a, s * s, cplx(mu.re()[k], mu.im()[k]))) ++c;
  return c;
}

}  // namespace

TEST(Lebesgue, TotalMassIsOne) {
  for (double kappa : {0.0, 4.0}) {
    QuadMeasure mu = lebesgue(small_spec(64, 96, kappa));
    EXPECT_NEAR(mu.total_mass(), 1.0, 1e-12);
    ASSERT_NE(mu.polar(), nullptr);
    EXPECT_NEAR(mu.polar()->total_mass(), 1.0, 1e-13);
    EXPECT_EQ(mu.polar()->size(), mu.size());
  }
  LebesgueSpec s3;
  s3.n = 3;
  s3.radial = 10;
  s3.angular = 10;
  QuadMeasure m3 = lebesgue(s3);
  EXPECT_EQ(m3.size(), 100u);
  EXPECT_NEAR(m3.total_mass(), 1.0, 1e-14);
  for (std::size_t k = 0; k < m3.size(); ++k) EXPECT_LT(m3.node(k).norm(), 1.0);
}

TEST(Lebesgue, IntegratesRadialMomentsExactly) {
  // int |z|^{2k} dV = 1/(k+1); 160 nodes over 15 panels is exact through degree 19 in rho
  QuadMeasure mu = lebesgue(small_spec(160, 32));
  for (int k = 0; k <= 9; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) sum += mu.weights()[i] * std::pow(mu.node(i).norm2(), k);
    EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-13) << "k=" << k;
  }
}

TEST(Lebesgue, AngularMomentsVanish) {
  QuadMeasure mu = lebesgue(small_spec(32, 16));
  for (int m = 1; m < 16; ++m) {
    cplx sum = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) sum += mu.weights()[i] * std::pow(mu.node(i)[0], m);
    EXPECT_LT(std::abs(sum), 1e-14) << "m=" << m;
  }
}

TEST(Lebesgue, GradingAddsNodesNearTheBoundary) {
  QuadMeasure flat = lebesgue(small_spec(64, 96, 0.0));
  QuadMeasure graded = lebesgue(small_spec(64, 96, 4.0));
  EXPECT_EQ(flat.size(), 64u * 96u);
  EXPECT_GT(graded.size(), flat.size());
  const PolarGrid* g = graded.polar();
  for (std::size_t i = 0; i + 1 < g->rho.size(); ++i) EXPECT_LE(g->count[i], g->count[i + 1]);
}

TEST(Lebesgue, RejectsBadSpecs) {
  LebesgueSpec s = small_spec();
  s.radial = 0;
  EXPECT_THROW(lebesgue(s), ArgumentError);
  s = small_spec();
  s.rho_max = 1.0;
  EXPECT_THROW(lebesgue(s), ArgumentError);
  s = small_spec();
  s.kappa = -1.0;
  EXPECT_THROW(lebesgue(s), ArgumentError);
  s = small_spec();
  s.radial = 3;  // below the panel count
  EXPECT_THROW(lebesgue(s), ArgumentError);
}

TEST(BallMass, PolarCountingMatchesIndexAndBruteForce) {
  QuadMeasure mu = lebesgue(small_spec(48, 64, 3.0));
  PolarGrid unit = *mu.polar();
  std::fill(unit.node_weight.begin(), unit.node_weight.end(), 1.0);
  const DiskIndex& idx = mu.index();
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    double rad = i % 3 == 0 ? 1.0 - std::pow(10.0, -4.0 * rng.uniform()) : rng.uniform() * 0.99;
    cplx a = rad * std::polar(1.0, kTwoPi * rng.uniform());
    double s = i % 10 == 0 ? 0.999 : rng.uniform(0.05, 0.95);
    auto brute = static_cast<double>(brute_count(mu, a, s));
    ASSERT_EQ(unit.ball_mass(a, s), brute) << "a=" << a << " s=" << s;
    ASSERT_EQ(static_cast<double>(idx.ball_count(a, s)), brute) << "a=" << a << " s=" << s;
  }
}

TEST(BallMass, PolarAndIndexMassesAgree) {
  QuadMeasure mu = lebesgue(small_spec(48, 64, 3.0));
  QuadMeasure unindexed = mu.with_weights(mu.weights(), mu.provenance());
  ASSERT_EQ(unindexed.polar(), nullptr);
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    Point a = rng.ball_point(1, 0.999);
    double s = rng.uniform(0.1, 0.9);
    EXPECT_NEAR(mu.ball_mass(a, s), unindexed.ball_mass(a, s), 1e-13);
  }
}

TEST(BallMass, ConvergesToClosedForm) {
  LebesgueSpec spec;
  spec.radial = 1024;
  spec.angular = 2048;
  PolarGrid g = PolarGrid::make(spec);
  Rng rng(14);
  for (int i = 0; i < 50; ++i) {
    Point a = rng.ball_point(1, 0.9);
    double s = rng.uniform(0.3, 0.9);
    double exact = ball_volume(a, s).value;
    EXPECT_NEAR(g.ball_mass(a[0], s) / exact, 1.0, 5e-3);
  }
}

TEST(BallMass, HigherDimensionBruteForce) {
  QuadMeasure mu = point_masses(2, {{Vec{0.0, 0.0}, 1.0}, {Vec{0.5, 0.0}, 2.0}, {Vec{0.0, cplx(0.0, 0.9)}, 4.0}});
  EXPECT_EQ(mu.ball_mass(Point::origin(2), 0.3), 1.0);
  EXPECT_EQ(mu.ball_mass(Point::origin(2), 0.6), 3.0);
  EXPECT_EQ(mu.ball_mass(Point{0.0, cplx(0.0, 0.9)}, 0.1), 4.0);
  EXPECT_THROW(mu.ball_mass(Point::origin(1), 0.5), ArgumentError);
  EXPECT_THROW(mu.ball_mass(Point::origin(2), 1.0), ArgumentError);
}

TEST(Density, RadialDensityKeepsPolarStructure) {
  QuadMeasure base = lebesgue(small_spec(64, 32));
  Density d;
  d.boundary_power = 1.0;
  QuadMeasure mu = apply_density(base, d);
  ASSERT_NE(mu.polar(), nullptr);
  EXPECT_EQ(mu.provenance().kind, MeasureKind::Density);
  // int (1-|z|^2) dV = 1/2
  EXPECT_NEAR(mu.total_mass(), 0.5, 1e-13);
  EXPECT_NEAR(mu.polar()->total_mass(), 0.5, 1e-13);
  Rng rng(15);
  QuadMeasure plain = mu.with_weights(mu.weights(), mu.provenance());
  for (int i = 0; i < 50; ++i) {
    Point a = rng.ball_point(1, 0.99);
    EXPECT_NEAR(mu.ball_mass(a, 0.5), plain.ball_mass(a, 0.5), 1e-13);
  }
}

TEST(Density, ModulusFactor) {
  QuadMeasure base = lebesgue(small_spec(64, 32));
  Density d;
  d.modulus_of = HoloFunction::coord(1, 0);
  d.modulus_power = 2.0;
  QuadMeasure mu = apply_density(base, d);
  EXPECT_EQ(mu.polar(), nullptr);
  EXPECT_NEAR(mu.total_mass(), 0.5, 1e-13);
  Density bad;
  bad.modulus_of = HoloFunction::coord(2, 0);
  EXPECT_THROW(apply_density(base, bad), ArgumentError);
}

TEST(Density, NegativePowerNearBoundaryStaysFinite) {
  QuadMeasure base = lebesgue(small_spec(64, 32));
  Density d;
  d.boundary_power = -0.5;
  QuadMeasure mu = apply_density(base, d);
  EXPECT_FALSE(mu.has_sentinel());
  // int (1-|z|^2)^{-1/2} dV = 2
  EXPECT_NEAR(mu.total_mass(), 2.0, 1e-2);
}

TEST(QuadMeasureTest, ValidatesWeightsAndShapes) {
  EXPECT_THROW(QuadMeasure(1, {0.1}, {0.0}, {-1.0}, {}), ArgumentError);
  EXPECT_THROW(QuadMeasure(1, {0.1}, {0.0}, {NAN}, {}), ArgumentError);
  EXPECT_THROW(QuadMeasure(1, {0.1, 0.2}, {0.0}, {1.0}, {}), ArgumentError);
  QuadMeasure m(1, {0.1}, {0.0}, {1.0}, {});
  EXPECT_THROW(m.with_weights({1.0, 2.0}, {}), ArgumentError);
  EXPECT_THROW(m.with_weights({-1.0}, {}), ArgumentError);
  EXPECT_THROW(point_masses(1, {{Vec{1.0}, 1.0}}), ArgumentError);
  EXPECT_THROW(point_masses(1, {{Vec{0.5}, -1.0}}), ArgumentError);
}

TEST(QuadMeasureTest, SentinelsAndEmpty) {
  QuadMeasure e = QuadMeasure::empty(2);
  EXPECT_EQ(e.size(), 0u);
  EXPECT_TRUE(e.all_zero());
  EXPECT_EQ(e.total_mass(), 0.0);
  QuadMeasure m(1, {0.1, 0.2}, {0.0, 0.0}, {1.0, INFINITY}, {});
  EXPECT_TRUE(m.has_sentinel());
  EXPECT_EQ(m.first_sentinel(), 1u);
  EXPECT_FALSE(m.all_zero());
}

TEST(QuadMeasureTest, ReweightingSharesCoordinates) {
  QuadMeasure mu = lebesgue(small_spec(16, 16));
  QuadMeasure half = mu.with_weights(std::vector<double>(mu.size(), 0.5), mu.provenance());
  EXPECT_EQ(&mu.re(), &half.re());
  EXPECT_EQ(&mu.im(), &half.im());
}

TEST(StripedSum, MatchesLaneOrder) {
  std::vector<double> x{1e16, 1.0, -1e16, 1.0, 3.0};
  // lanes: (1e16 + 3) + 1, -1e16 + 1
  double l0 = 1e16 + 3.0, l1 = 1.0, l2 = -1e16, l3 = 1.0;
  EXPECT_EQ(striped_sum(x.data(), x.size()), (l0 + l1) + (l2 + l3));
  EXPECT_EQ(striped_sum(x.data(), 0), 0.0);
}

TEST(DiskIndexTest, FromPointsCountsExactly) {
  Rng rng(16);
  std::vector<cplx> pts;
  for (int i = 0; i < 5000; ++i) pts.push_back(rng.ball_point(1, 0.9999)[0]);
  DiskIndex idx = DiskIndex::from_points(pts, {});
  for (int i = 0; i < 200; ++i) {
    cplx a = rng.ball_point(1, 0.999)[0];
    double s = rng.uniform(0.05, 0.95);
    std::size_t brute = 0;
    for (cplx w : pts) brute += in_ball_1d(a, s * s, w) ? 1 : 0;
    ASSERT_EQ(idx.ball_count(a, s), brute);
  }
  EXPECT_THROW(DiskIndex::from_points(pts, {1.0}), ArgumentError);
  EXPECT_THROW(DiskIndex::from_points(pts, {}, 0.0), ArgumentError);
}

TEST(DiskIndexTest, AngleInRange) {
  EXPECT_EQ(angle_of(cplx(1.0, 0.0)), 0.0);
  EXPECT_NEAR(angle_of(cplx(0.0, -1.0)), 1.5 * kPi, 1e-15);
  EXPECT_LT(angle_of(cplx(1.0, -1e-300)), kTwoPi);
}

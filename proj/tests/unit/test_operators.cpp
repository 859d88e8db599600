#include <gtest/gtest.h>

#include <cmath>

#include "varberg/checks.hpp"
#include "varberg/measure.hpp"
#include "varberg/operators.hpp"
#include "varberg/random.hpp"

using namespace varberg;

namespace {

QuadMeasure dv(int radial = 400, int angular = 512) {
  LebesgueSpec s;
  s.radial = radial;
  s.angular = angular;
  return lebesgue(s);
}

HoloFunction z1() { return HoloFunction::coord(1, 0); }

}  // namespace

TEST(Toeplitz, LebesgueSymbolReproducesPolynomials) {
  ToeplitzSpec t{dv(), 0.0};
  Rng rng(1);
  HoloFunction f = random_polynomial(1, 4, rng);
  ToeplitzImage img(t, f);
  for (int i = 0; i < 100; ++i) {
    Point z = rng.ball_point(1, 0.9);
    ASSERT_NEAR(std::abs(img.at(z) - f(z)), 0.0, 1e-9);
  }
  EXPECT_NEAR(std::abs(apply_toeplitz(t, f, Point{0.3}) - f(Point{0.3})), 0.0, 1e-9);
}

TEST(Toeplitz, BetaChangesTheKernelPower) {
  // (beta + 1)(1-|w|^2)^beta dV reproduces against the kernel power n + 1 + beta
  Density d;
  d.boundary_power = 1.0;
  QuadMeasure base = dv(200, 256);
  QuadMeasure weighted = apply_density(base, d);
  std::vector<double> w = weighted.weights();
  for (double& x : w) x *= 2.0;
  ToeplitzSpec t{weighted.with_weights(w, weighted.provenance()), 1.0};
  HoloFunction f = HoloFunction::monomial({3}) + HoloFunction::constant(1, 2.0);
  for (double r : {0.0, 0.4, 0.8}) {
    Point z{cplx(r, -0.1)};
    EXPECT_NEAR(std::abs(apply_toeplitz(t, f, z) - f(z)), 0.0, 1e-9);
  }
  EXPECT_THROW(validate(ToeplitzSpec{base, -1.0}), ArgumentError);
}

TEST(Toeplitz, PointMassSymbol) {
  // T_{delta_a} f(z) = f(a) (1 - z conj a)^{-2}
  Point a{cplx(0.5, 0.2)};
  ToeplitzSpec t{point_masses(1, {{a.vec(), 0.75}}), 0.0};
  HoloFunction f = HoloFunction::monomial({2});
  Point z{cplx(-0.3, 0.6)};
  cplx expect = 0.75 * f(a) / std::pow(1.0 - z[0] * std::conj(a[0]), 2);
  EXPECT_NEAR(std::abs(apply_toeplitz(t, f, z) - expect), 0.0, 1e-14);
  EXPECT_EQ(apply_toeplitz(ToeplitzSpec{QuadMeasure::empty(1), 0.0}, f, z), cplx(0.0));
}

TEST(Wco, IdentityAndComposition) {
  WcoSpec id{HoloFunction::constant(1, 1.0), SelfMap::identity(1)};
  HoloFunction f = HoloFunction::monomial({3}, cplx(0.0, 2.0));
  Point z{cplx(0.1, 0.7)};
  EXPECT_EQ(apply_wco(id, f, z), f(z));
  WcoSpec w{z1(), SelfMap::scalar(1, -0.5)};
  EXPECT_NEAR(std::abs(apply_wco(w, f, z) - z[0] * f(Point{-0.5 * z[0]})), 0.0, 1e-15);
  EXPECT_THROW(validate(WcoSpec{HoloFunction(), SelfMap::identity(1)}), ArgumentError);
  EXPECT_THROW(validate(WcoSpec{HoloFunction::constant(2, 1.0), SelfMap::identity(1)}), ArgumentError);
}

TEST(SelfMapTest, RejectsMapsLeavingTheBall) {
  EXPECT_THROW(SelfMap::make({HoloFunction::coord(1, 0).scale(1.5)}), ValidationError);
  EXPECT_THROW(SelfMap::make({HoloFunction::conj_coord(1, 0)}), ValidationError);
  SelfMap ok = SelfMap::make({HoloFunction::monomial({2}).scale(0.9)});
  EXPECT_LE(ok.sup_modulus_estimate(), 0.9);
}

TEST(Diff, AlphaDefaultAndFloor) {
  ExponentField p = example_exponent(1).validated();  // p+ = 5
  WcoSpec a{z1(), SelfMap::identity(1)}, b{HoloFunction::constant(1, 1.0), SelfMap::scalar(1, 0.5)};
  EXPECT_DOUBLE_EQ(make_diff(a, b, p).alpha, 10.0);
  EXPECT_DOUBLE_EQ(make_diff(a, b, p, 12.0).alpha, 12.0);
  EXPECT_THROW(make_diff(a, b, p, 9.0), ArgumentError);
  DiffSpec d = make_diff(a, b, p);
  HoloFunction f = HoloFunction::monomial({2});
  Point z{cplx(0.2, 0.3)};
  EXPECT_EQ(apply_diff(d, f, z), apply_wco(a, f, z) - apply_wco(b, f, z));
  EXPECT_EQ(apply_diff(make_diff(a, a, p), f, z), cplx(0.0));
}

TEST(Omega, ConstantExponentGivesOne) {
  ExponentField p = ExponentField::constant(1, 3.0).validated();
  Rng rng(2);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(omega_weight(p, SelfMap::scalar(1, 0.5), rng.ball_point(1, 0.999)), 1.0);
}

TEST(Omega, MatchesDirectFormula) {
  ExponentField p = example_exponent(1).validated();
  SelfMap phi = SelfMap::scalar(1, -1.0);
  for (double x : {0.5, 0.9, 0.99}) {
    Point z{x};
    double pz = 4.0 + x, pw = 4.0 - x;
    double expect = std::pow(1.0 - x * x, -2.0 * (pz - pw) / pw);
    EXPECT_NEAR(omega_weight(p, phi, z) / expect, 1.0, 1e-12);
  }
  // log form survives where the power overflows
  double l = log_omega_weight(p, phi, Point{std::nextafter(1.0, 0.0)});
  EXPECT_TRUE(std::isfinite(l) || l == INFINITY);
}

TEST(JointDistance, ZeroForEqualMaps) {
  SelfMap a = SelfMap::scalar(1, 0.5), b = SelfMap::scalar(1, -0.5);
  Point z{0.4};
  EXPECT_EQ(joint_distance(a, a, z), 0.0);
  EXPECT_NEAR(joint_distance(a, b, z), pseudo_distance(Point{0.2}, Point{-0.2}), 1e-15);
}

TEST(Pullback, PlainMassAndSupport) {
  QuadMeasure base = dv(100, 64);
  ExponentField p = ExponentField::constant(1, 2.0).validated();
  WcoSpec w{HoloFunction::constant(1, 1.0), SelfMap::scalar(1, 0.5)};
  QuadMeasure mu = pullback_measure(p, w, PullbackVariant::Plain, base);
  EXPECT_NEAR(mu.total_mass(), 1.0, 1e-13);
  EXPECT_NEAR(mu.ball_mass(Point::origin(1), 0.5), 1.0, 1e-13);
  EXPECT_EQ(mu.provenance().kind, MeasureKind::Pullback);
  // |u|^p with u = z: int |z|^2 dV = 1/2
  QuadMeasure mz = pullback_measure(p, WcoSpec{z1(), SelfMap::identity(1)}, PullbackVariant::Plain, base);
  EXPECT_NEAR(mz.total_mass(), 0.5, 1e-12);
  EXPECT_FALSE(mz.ring_offsets().empty());
  EXPECT_THROW(pullback_measure(p, w, PullbackVariant::Dist, base), ArgumentError);
  EXPECT_THROW(pullback_measure(p, w, PullbackVariant::Plain, mz), ArgumentError);
}

TEST(Pullback, TrivialZeroCases) {
  QuadMeasure base = dv(60, 32);
  ExponentField p = ExponentField::constant(1, 2.0).validated();
  WcoSpec a{HoloFunction::constant(1, 1.0), SelfMap::scalar(1, 0.5)};
  WcoSpec b{z1(), SelfMap::scalar(1, 0.5)};
  WcoSpec c{HoloFunction::constant(1, 1.0), SelfMap::scalar(1, -0.5)};
  DiffSpec same = make_diff(a, a, p, 4.0);
  DiffSpec same_map = make_diff(a, b, p, 4.0);
  DiffSpec same_weight = make_diff(a, c, p, 4.0);
  EXPECT_TRUE(pullback_measure(p, same, PullbackVariant::Dist, base).all_zero());
  EXPECT_TRUE(pullback_measure(p, same, PullbackVariant::Lambda, base).all_zero());
  EXPECT_TRUE(pullback_measure(p, same_map, PullbackVariant::Dist, base).all_zero());
  EXPECT_TRUE(pullback_measure(p, same_map, PullbackVariant::Dist, base, true).all_zero());
  EXPECT_FALSE(pullback_measure(p, same_map, PullbackVariant::Lambda, base).all_zero());
  EXPECT_TRUE(pullback_measure(p, same_weight, PullbackVariant::Lambda, base).all_zero());
  EXPECT_FALSE(pullback_measure(p, same_weight, PullbackVariant::Dist, base).all_zero());
  // the "+1" variant keeps the plain part where d = 0
  EXPECT_NEAR(pullback_measure(p, same, PullbackVariant::DistPlus, base).total_mass(), 1.0, 1e-13);
}

TEST(Pullback, LambdaWeight) {
  // integrand |u - v|^p (1 - d)^alpha with u - v = 1 - z
  QuadMeasure base = dv(200, 128);
  ExponentField p = ExponentField::constant(1, 2.0).validated();
  WcoSpec a{HoloFunction::constant(1, 1.0), SelfMap::scalar(1, 0.5)};
  WcoSpec b{z1(), SelfMap::scalar(1, -0.5)};
  DiffSpec d = make_diff(a, b, p, 4.0);
  QuadMeasure mu = pullback_measure(p, d, PullbackVariant::Lambda, base);
  double expect = 0.0;
  for (std::size_t k = 0; k < base.size(); ++k) {
    Point z(base.node(k));
    double dist = joint_distance(a.phi, b.phi, z);
    expect += base.weights()[k] * std::norm(1.0 - z[0]) * std::pow(1.0 - dist, 4.0);
  }
  EXPECT_NEAR(mu.total_mass() / expect, 1.0, 1e-12);
  EXPECT_EQ(parse_variant("lambda_plus"), PullbackVariant::LambdaPlus);
  EXPECT_STREQ(variant_name(PullbackVariant::DistPlus), "dist_plus");
  EXPECT_THROW(parse_variant("nope"), ArgumentError);
}

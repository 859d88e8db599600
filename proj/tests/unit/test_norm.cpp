#include <gtest/gtest.h>

#include <cmath>

#include "varberg/checks.hpp"
#include "varberg/holo.hpp"
#include "varberg/measure.hpp"
#include "varberg/norm.hpp"
#include "varberg/random.hpp"

using namespace varberg;

namespace {

const QuadMeasure& dv400() {
  static const QuadMeasure mu = [] {
    LebesgueSpec s;
    s.radial = 400;
    s.angular = 512;
    return lebesgue(s);
  }();
  return mu;
}

const QuadMeasure& dv_small() {
  static const QuadMeasure mu = [] {
    LebesgueSpec s;
    s.radial = 100;
    s.angular = 64;
    return lebesgue(s);
  }();
  return mu;
}

}  // namespace

class ClosedForm : public ::testing::TestWithParam<std::tuple<int, double>> {};

// ||z^k||_p^p = int |z|^{kp} dV = 1 / (kp/2 + 1)
TEST_P(ClosedForm, MonomialNorm) {
  auto [k, p] = GetParam();
  ExponentField ex = ExponentField::constant(1, p).validated();
  NormResult r = luxemburg_norm(HoloFunction::monomial({k}), ex, dv400());
  double expect = std::pow(1.0 / (k * p / 2.0 + 1.0), 1.0 / p);
  EXPECT_NEAR(r.value / expect, 1.0, 1e-6);
  EXPECT_NEAR(r.modular_at_value, 1.0, 1e-10);
  EXPECT_FALSE(r.divergent);
}

INSTANTIATE_TEST_SUITE_P(Norm, ClosedForm,
                         ::testing::Combine(::testing::Values(0, 1, 2, 3), ::testing::Values(2.0, 3.5)));

TEST(Modular, ConstantExponentIntegral) {
  ExponentField p = ExponentField::constant(1, 2.0).validated();
  ModularResult m = modular(HoloFunction::coord(1, 0), p, dv_small());
  EXPECT_NEAR(m.value, 0.5, 1e-12);
  EXPECT_FALSE(m.overflow);
}

TEST(Norm, Homogeneous) {
  ExponentField p = (ExponentField::constant(1, 3.0) + ExponentField::re_linear(Vec{0.8})).validated();
  Rng rng(3);
  HoloFunction f = random_polynomial(1, 3, rng);
  double base = luxemburg_norm(f, p, dv_small()).value;
  for (double c : {1e-6, 0.5, 7.0, 1e5}) {
    double scaled = luxemburg_norm(f.scale(cplx(0.0, c)), p, dv_small()).value;
    EXPECT_NEAR(scaled / (c * base), 1.0, 1e-9) << c;
  }
}

TEST(Norm, TriangleInequality) {
  ExponentField p = (ExponentField::constant(1, 2.5) + ExponentField::re_linear(Vec{cplx(0.3, 0.9)})).validated();
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    HoloFunction f = random_polynomial(1, 4, rng), g = random_polynomial(1, 4, rng);
    double nf = luxemburg_norm(f, p, dv_small()).value;
    double ng = luxemburg_norm(g, p, dv_small()).value;
    double nfg = luxemburg_norm(f + g, p, dv_small()).value;
    EXPECT_LE(nfg, (nf + ng) * (1.0 + 1e-10));
  }
}

TEST(Norm, ZeroFunctionHasZeroNorm) {
  ExponentField p = ExponentField::constant(1, 2.0).validated();
  NormResult r = luxemburg_norm(HoloFunction::zero(1), p, dv_small());
  EXPECT_EQ(r.value, 0.0);
}

TEST(Norm, SentinelMakesNormInfinite) {
  QuadMeasure mu(1, {0.1, 0.2}, {0.0, 0.0}, {0.5, INFINITY}, {});
  ExponentField p = ExponentField::constant(1, 2.0).validated();
  NormResult r = luxemburg_norm(HoloFunction::constant(1, 1.0), p, mu);
  EXPECT_TRUE(r.divergent);
  EXPECT_EQ(r.value, INFINITY);
  ModularResult m = modular(HoloFunction::constant(1, 1.0), p, mu);
  EXPECT_TRUE(m.overflow);
  EXPECT_EQ(m.offending_node, 1u);
  // a zero integrand at the sentinel node does not diverge
  ModularProfile zero_there(std::vector<double>{0.0, -INFINITY}, std::vector<double>{2.0, 2.0}, std::vector<double>{0.5, INFINITY});
  EXPECT_FALSE(zero_there.divergent());
  EXPECT_NEAR(luxemburg_norm(zero_there).value, std::sqrt(0.5), 1e-10);
}

TEST(Norm, ExtremeScalesBracket) {
  ExponentField p = ExponentField::constant(1, 4.0).validated();
  for (double c : {1e-200, 1e200}) {
    NormResult r = luxemburg_norm(HoloFunction::constant(1, c), p, dv_small());
    EXPECT_NEAR(r.value / c, 1.0, 1e-10);
  }
}

TEST(Norm, KernelFunctionNearBoundaryUsesLogSpace) {
  // |(1 - z conj a)^{-2}|^p with |a| = 1 - 1e-6 overflows naively
  ExponentField p = ExponentField::constant(1, 8.0).validated();
  HoloFunction f = HoloFunction::kernel_power(Point{1.0 - 1e-6}, 40.0);
  NormResult r = luxemburg_norm(f, p, dv_small());
  EXPECT_TRUE(std::isfinite(r.value));
  EXPECT_GT(r.value, 1e100);
}

TEST(NormModular, RandomPairsSatisfyUnitBallRelations) {
  ExponentField p = (ExponentField::constant(1, 3.0) + ExponentField::re_linear(Vec{0.7})).validated();
  Rng rng(6);
  for (int i = 0; i < 10; ++i) {
    HoloFunction f = random_polynomial(1, 4, rng).scale(std::exp(rng.uniform(-3.0, 3.0)));
    PropertyReport r = check_norm_modular_bound(f, p, dv_small());
    EXPECT_TRUE(r.pass) << r.notes;
    EXPECT_NEAR(r.metrics.at("modular_at_norm"), 1.0, 1e-8);
    EXPECT_NEAR(r.metrics.at("unit_norm"), 1.0, 1e-8);
    EXPECT_GE(r.metrics.at("inequality_margin"), -1e-8);
  }
}

TEST(ModularProfileTest, RejectsNaNAndMismatch) {
  EXPECT_THROW(ModularProfile({0.0}, {2.0, 2.0}, {1.0}), ArgumentError);
  EXPECT_THROW(ModularProfile({NAN}, {2.0}, {1.0}), NumericalError);
}

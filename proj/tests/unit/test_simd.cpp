#include <gtest/gtest.h>

#include <cmath>
#include <cstring>

#include "varberg/random.hpp"
#include "varberg/simd.hpp"

using namespace varberg;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

struct Data {
  std::vector<double> re, im, w, gre, gim, logabs, p;
};

Data make_data(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Data d;
  for (std::size_t k = 0; k < n; ++k) {
    Point z = rng.ball_point(1, 0.999999);
    d.re.push_back(z[0].real());
    d.im.push_back(z[0].imag());
    d.w.push_back(k % 17 == 0 ? 0.0 : rng.uniform(0.0, 1e-3));
    d.gre.push_back(rng.normal());
    d.gim.push_back(rng.normal());
    d.logabs.push_back(k % 29 == 0 ? -INFINITY : rng.uniform(-800.0, 30.0));
    d.p.push_back(rng.uniform(1.1, 9.0));
  }
  return d;
}

class SimdLevels : public ::testing::Test {
 protected:
  void SetUp() override {
    saved_ = simd::active_level();
    if (simd::detected_level() != simd::Level::Avx2) GTEST_SKIP() << "no AVX2 on this machine or build";
  }
  void TearDown() override { simd::set_level(saved_); }
  simd::Level saved_ = simd::Level::Scalar;
};

}  // namespace

TEST(Simd, LevelSelectionFallsBack) {
  simd::Level saved = simd::active_level();
  EXPECT_EQ(simd::set_level(simd::Level::Scalar), simd::Level::Scalar);
  EXPECT_EQ(simd::active_level(), simd::Level::Scalar);
  simd::Level got = simd::set_level(simd::Level::Avx2);
  EXPECT_EQ(got, simd::detected_level());
  EXPECT_STREQ(simd::level_name(simd::Level::Scalar), "scalar");
  simd::set_level(saved);
}

TEST_F(SimdLevels, BallMassAndCountBitIdentical) {
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 64u, 1001u, 40000u}) {
    Data d = make_data(n, 100 + n);
    Rng rng(n);
    for (int q = 0; q < 20; ++q) {
      Point a = rng.ball_point(1, 0.9999);
      double s2 = std::pow(rng.uniform(0.05, 0.99), 2);
      simd::set_level(simd::Level::Scalar);
      double ms = simd::ball_mass(a[0].real(), a[0].imag(), s2, d.re.data(), d.im.data(), d.w.data(), n);
      std::size_t cs = simd::ball_count(a[0].real(), a[0].imag(), s2, d.re.data(), d.im.data(), n);
      simd::set_level(simd::Level::Avx2);
      double mv = simd::ball_mass(a[0].real(), a[0].imag(), s2, d.re.data(), d.im.data(), d.w.data(), n);
      std::size_t cv = simd::ball_count(a[0].real(), a[0].imag(), s2, d.re.data(), d.im.data(), n);
      ASSERT_TRUE(same_bits(ms, mv)) << n << ": " << ms << " vs " << mv;
      ASSERT_EQ(cs, cv);
    }
  }
}

TEST_F(SimdLevels, KernelSumBitIdentical) {
  for (std::size_t n : {1u, 6u, 333u, 20000u}) {
    Data d = make_data(n, 200 + n);
    Rng rng(n + 1);
    for (int power : {1, 2, 3, 5}) {
      for (bool absolute : {false, true}) {
        Point z = rng.ball_point(1, 0.99);
        simd::set_level(simd::Level::Scalar);
        simd::Complex2 s = simd::kernel_sum(z[0].real(), z[0].imag(), d.re.data(), d.im.data(), d.gre.data(),
                                            d.gim.data(), n, power, absolute);
        simd::set_level(simd::Level::Avx2);
        simd::Complex2 v = simd::kernel_sum(z[0].real(), z[0].imag(), d.re.data(), d.im.data(), d.gre.data(),
                                            d.gim.data(), n, power, absolute);
        ASSERT_TRUE(same_bits(s.re, v.re) && same_bits(s.im, v.im)) << n << " power " << power;
      }
    }
  }
}

TEST_F(SimdLevels, ExpWeightedSumBitIdentical) {
  for (std::size_t n : {1u, 2u, 9u, 1000u, 30000u}) {
    Data d = make_data(n, 300 + n);
    for (double shift : {0.0, 12.5, -40.0}) {
      simd::set_level(simd::Level::Scalar);
      double s = simd::exp_weighted_sum(d.logabs.data(), d.p.data(), d.w.data(), shift, n);
      simd::set_level(simd::Level::Avx2);
      double v = simd::exp_weighted_sum(d.logabs.data(), d.p.data(), d.w.data(), shift, n);
      ASSERT_TRUE(same_bits(s, v)) << n << ": " << s << " vs " << v;
    }
  }
}

TEST(Simd, ExpMatchesLibm) {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    double x = rng.uniform(-700.0, 700.0);
    double e = std::exp(x);
    ASSERT_NEAR(simd::exp_scalar(x) / e, 1.0, 1e-15) << x;
  }
  EXPECT_EQ(simd::exp_scalar(-INFINITY), 0.0);
  EXPECT_EQ(simd::exp_scalar(0.0), 1.0);
  EXPECT_EQ(simd::exp_scalar(-800.0), 0.0);
}

TEST(Simd, ZeroWeightTermsContributeNothing) {
  double logabs[] = {INFINITY, 0.0, -INFINITY};
  double p[] = {2.0, 2.0, 2.0};
  double w[] = {0.0, 0.25, 1.0};
  EXPECT_EQ(simd::exp_weighted_sum(logabs, p, w, 0.0, 3), 0.25);
}

TEST(Simd, ScalarKernelSumAgainstDirectFormula) {
  Data d = make_data(50, 7);
  cplx z(0.3, -0.4);
  simd::Complex2 s =
      simd::detail::kernel_sum_scalar(z.real(), z.imag(), d.re.data(), d.im.data(), d.gre.data(), d.gim.data(), 50, 2, false);
  cplx direct = 0.0;
  for (std::size_t k = 0; k < 50; ++k) {
    cplx w(d.re[k], d.im[k]);
    direct += cplx(d.gre[k], d.gim[k]) / std::pow(1.0 - z * std::conj(w), 2);
  }
  EXPECT_NEAR(s.re, direct.real(), 1e-9 * std::abs(direct));
  EXPECT_NEAR(s.im, direct.imag(), 1e-9 * std::abs(direct));
}

#include <cmath>
#include <cstdint>
#include <cstring>

#include "varberg/simd.hpp"

namespace varberg::simd {

namespace {

constexpr double kP0 = 1.26177193074810590878E-4;
constexpr double kP1 = 3.02994407707441961300E-2;
constexpr double kP2 = 9.99999999999999999910E-1;
constexpr double kQ0 = 3.00198505138664455042E-6;
constexpr double kQ1 = 2.52448340349684104192E-3;
constexpr double kQ2 = 2.27265548208155028766E-1;
constexpr double kQ3 = 2.00000000000000000009E0;
constexpr double kC1 = 6.93145751953125E-1;
constexpr double kC2 = 1.42860682030941723212E-6;
constexpr double kLog2e = 1.4426950408889634073599;
constexpr double kMaxLog = 709.78;
constexpr double kMinLog = -745.2;
constexpr double kMagic = 4503599627370496.0;  // 2^52

// 2^k for integral k in [-1022, 1023], built the same way as the vector path
double pow2i(double k) {
  double t = (k + 1023.0) + kMagic;
  std::uint64_t bits;
  std::memcpy(&bits, &t, sizeof bits);
  bits <<= 52;
  double r;
  std::memcpy(&r, &bits, sizeof r);
  return r;
}

struct Lanes {
  double l[4] = {0.0, 0.0, 0.0, 0.0};
  double total() const { return (l[0] + l[1]) + (l[2] + l[3]); }
};

}  // namespace

double exp_scalar(double x) {
  if (x > kMaxLog) return INFINITY;
  if (x < kMinLog) return 0.0;
  double px = std::floor(kLog2e * x + 0.5);
  x = x - px * kC1;
  x = x - px * kC2;
  double xx = x * x;
  double pp = ((kP0 * xx + kP1) * xx + kP2) * x;
  double qq = ((kQ0 * xx + kQ1) * xx + kQ2) * xx + kQ3;
  double r = pp / (qq - pp);
  r = 1.0 + 2.0 * r;
  double n1 = std::floor(px * 0.5);
  double n2 = px - n1;
  r = r * pow2i(n1);
  r = r * pow2i(n2);
  return r;
}

namespace detail {

double ball_mass_scalar(double ar, double ai, double s2, const double* re, const double* im,
                        const double* weight, std::size_t n) {
  Lanes acc;
  for (std::size_t k = 0; k < n; ++k) {
    double wr = re[k], wi = im[k];
    double dr = ar - wr, di = ai - wi;
    double num = dr * dr + di * di;
    double x = 1.0 - (wr * ar + wi * ai);
    double y = wi * ar - wr * ai;
    double den = x * x + y * y;
    if (num < s2 * den) acc.l[k & 3] += weight[k];
  }
  return acc.total();
}

std::size_t ball_count_scalar(double ar, double ai, double s2, const double* re, const double* im,
                              std::size_t n) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    double wr = re[k], wi = im[k];
    double dr = ar - wr, di = ai - wi;
    double num = dr * dr + di * di;
    double x = 1.0 - (wr * ar + wi * ai);
    double y = wi * ar - wr * ai;
    double den = x * x + y * y;
    if (num < s2 * den) ++count;
  }
  return count;
}

Complex2 kernel_sum_scalar(double zr, double zi, const double* re, const double* im,
                           const double* g_re, const double* g_im, std::size_t n, int power,
                           bool absolute) {
  Lanes acc_re, acc_im;
  for (std::size_t k = 0; k < n; ++k) {
    // q = 1 - z conj(w)
    double qr = 1.0 - (zr * re[k] + zi * im[k]);
    double qi = 0.0 - (zi * re[k] - zr * im[k]);
    double rr = 1.0, ri = 0.0;
    bool first = true;
    double br = qr, bi = qi;
    for (int m = power; m > 0; m >>= 1) {
      if (m & 1) {
        if (first) {
          rr = br;
          ri = bi;
          first = false;
        } else {
          double tr = rr * br - ri * bi;
          double ti = rr * bi + ri * br;
          rr = tr;
          ri = ti;
        }
      }
      if (m > 1) {
        double tr = br * br - bi * bi;
        double ti = br * bi + bi * br;
        br = tr;
        bi = ti;
      }
    }
    double mod2 = rr * rr + ri * ri;
    double tre, tim;
    if (absolute) {
      double mod = std::sqrt(mod2);
      tre = g_re[k] / mod;
      tim = g_im[k] / mod;
    } else {
      // g * conj(R) / |R|^2
      tre = (g_re[k] * rr + g_im[k] * ri) / mod2;
      tim = (g_im[k] * rr - g_re[k] * ri) / mod2;
    }
    acc_re.l[k & 3] += tre;
    acc_im.l[k & 3] += tim;
  }
  return {acc_re.total(), acc_im.total()};
}

double exp_weighted_sum_scalar(const double* logabs, const double* p, const double* w, double shift,
                               std::size_t n) {
  Lanes acc;
  for (std::size_t k = 0; k < n; ++k) {
    double e = exp_scalar(p[k] * (logabs[k] - shift));
    double t = w[k] * e;
    if (w[k] == 0.0 || e == 0.0) t = 0.0;
    acc.l[k & 3] += t;
  }
  return acc.total();
}

}  // namespace detail
}  // namespace varberg::simd

#include <immintrin.h>

#include <cstdint>

#include "varberg/simd.hpp"

namespace varberg::simd::detail {

namespace {

// Horizontal combine in the canonical order (l0 + l1) + (l2 + l3).
inline double lanes_total(__m256d v) {
  alignas(32) double l[4];
  _mm256_store_pd(l, v);
  return (l[0] + l[1]) + (l[2] + l[3]);
}

inline __m256d pow2i(__m256d k) {
  const __m256d magic = _mm256_set1_pd(4503599627370496.0);
  __m256d t = _mm256_add_pd(_mm256_add_pd(k, _mm256_set1_pd(1023.0)), magic);
  __m256i bits = _mm256_slli_epi64(_mm256_castpd_si256(t), 52);
  return _mm256_castsi256_pd(bits);
}

inline __m256d exp4(__m256d x) {
  const __m256d max_log = _mm256_set1_pd(709.78);
  const __m256d min_log = _mm256_set1_pd(-745.2);
  __m256d too_big = _mm256_cmp_pd(x, max_log, _CMP_GT_OQ);
  __m256d too_small = _mm256_cmp_pd(x, min_log, _CMP_LT_OQ);

  __m256d px = _mm256_floor_pd(
      _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(1.4426950408889634073599), x), _mm256_set1_pd(0.5)));
  x = _mm256_sub_pd(x, _mm256_mul_pd(px, _mm256_set1_pd(6.93145751953125E-1)));
  x = _mm256_sub_pd(x, _mm256_mul_pd(px, _mm256_set1_pd(1.42860682030941723212E-6)));
  __m256d xx = _mm256_mul_pd(x, x);

  __m256d pp = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(1.26177193074810590878E-4), xx),
                             _mm256_set1_pd(3.02994407707441961300E-2));
  pp = _mm256_add_pd(_mm256_mul_pd(pp, xx), _mm256_set1_pd(9.99999999999999999910E-1));
  pp = _mm256_mul_pd(pp, x);

  __m256d qq = _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(3.00198505138664455042E-6), xx),
                             _mm256_set1_pd(2.52448340349684104192E-3));
  qq = _mm256_add_pd(_mm256_mul_pd(qq, xx), _mm256_set1_pd(2.27265548208155028766E-1));
  qq = _mm256_add_pd(_mm256_mul_pd(qq, xx), _mm256_set1_pd(2.00000000000000000009E0));

  __m256d r = _mm256_div_pd(pp, _mm256_sub_pd(qq, pp));
  r = _mm256_add_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(_mm256_set1_pd(2.0), r));

  __m256d n1 = _mm256_floor_pd(_mm256_mul_pd(px, _mm256_set1_pd(0.5)));
  __m256d n2 = _mm256_sub_pd(px, n1);
  r = _mm256_mul_pd(r, pow2i(n1));
  r = _mm256_mul_pd(r, pow2i(n2));

  r = _mm256_blendv_pd(r, _mm256_set1_pd(__builtin_inf()), too_big);
  r = _mm256_blendv_pd(r, _mm256_setzero_pd(), too_small);
  return r;
}

struct Ball4 {
  __m256d ar, ai, s2, one;
  Ball4(double a_re, double a_im, double s2v)
      : ar(_mm256_set1_pd(a_re)), ai(_mm256_set1_pd(a_im)), s2(_mm256_set1_pd(s2v)), one(_mm256_set1_pd(1.0)) {}

  __m256d inside(__m256d wr, __m256d wi) const {
    __m256d dr = _mm256_sub_pd(ar, wr);
    __m256d di = _mm256_sub_pd(ai, wi);
    __m256d num = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
    __m256d x = _mm256_sub_pd(one, _mm256_add_pd(_mm256_mul_pd(wr, ar), _mm256_mul_pd(wi, ai)));
    __m256d y = _mm256_sub_pd(_mm256_mul_pd(wi, ar), _mm256_mul_pd(wr, ai));
    __m256d den = _mm256_add_pd(_mm256_mul_pd(x, x), _mm256_mul_pd(y, y));
    return _mm256_cmp_pd(num, _mm256_mul_pd(s2, den), _CMP_LT_OQ);
  }
};

}  // namespace

double ball_mass_avx2(double ar, double ai, double s2, const double* re, const double* im,
                      const double* weight, std::size_t n) {
  Ball4 b(ar, ai, s2);
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d mask = b.inside(_mm256_loadu_pd(re + k), _mm256_loadu_pd(im + k));
    acc = _mm256_add_pd(acc, _mm256_and_pd(mask, _mm256_loadu_pd(weight + k)));
  }
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  for (std::size_t j = 0; k < n; ++k, ++j) {
    double wr = re[k], wi = im[k];
    double dr = ar - wr, di = ai - wi;
    double num = dr * dr + di * di;
    double x = 1.0 - (wr * ar + wi * ai);
    double y = wi * ar - wr * ai;
    double den = x * x + y * y;
    if (num < s2 * den) l[j] += weight[k];
  }
  return (l[0] + l[1]) + (l[2] + l[3]);
}

std::size_t ball_count_avx2(double ar, double ai, double s2, const double* re, const double* im,
                            std::size_t n) {
  Ball4 b(ar, ai, s2);
  std::size_t count = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d mask = b.inside(_mm256_loadu_pd(re + k), _mm256_loadu_pd(im + k));
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(mask)));
  }
  if (k < n) count += ball_count_scalar(ar, ai, s2, re + k, im + k, n - k);
  return count;
}

Complex2 kernel_sum_avx2(double zr, double zi, const double* re, const double* im, const double* g_re,
                         const double* g_im, std::size_t n, int power, bool absolute) {
  const __m256d vzr = _mm256_set1_pd(zr);
  const __m256d vzi = _mm256_set1_pd(zi);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc_re = zero, acc_im = zero;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d wr = _mm256_loadu_pd(re + k);
    __m256d wi = _mm256_loadu_pd(im + k);
    __m256d qr = _mm256_sub_pd(one, _mm256_add_pd(_mm256_mul_pd(vzr, wr), _mm256_mul_pd(vzi, wi)));
    __m256d qi = _mm256_sub_pd(zero, _mm256_sub_pd(_mm256_mul_pd(vzi, wr), _mm256_mul_pd(vzr, wi)));
    __m256d rr = one, ri = zero;
    bool first = true;
    __m256d br = qr, bi = qi;
    for (int m = power; m > 0; m >>= 1) {
      if (m & 1) {
        if (first) {
          rr = br;
          ri = bi;
          first = false;
        } else {
          __m256d tr = _mm256_sub_pd(_mm256_mul_pd(rr, br), _mm256_mul_pd(ri, bi));
          __m256d ti = _mm256_add_pd(_mm256_mul_pd(rr, bi), _mm256_mul_pd(ri, br));
          rr = tr;
          ri = ti;
        }
      }
      if (m > 1) {
        __m256d tr = _mm256_sub_pd(_mm256_mul_pd(br, br), _mm256_mul_pd(bi, bi));
        __m256d ti = _mm256_add_pd(_mm256_mul_pd(br, bi), _mm256_mul_pd(bi, br));
        br = tr;
        bi = ti;
      }
    }
    __m256d mod2 = _mm256_add_pd(_mm256_mul_pd(rr, rr), _mm256_mul_pd(ri, ri));
    __m256d gr = _mm256_loadu_pd(g_re + k);
    __m256d gi = _mm256_loadu_pd(g_im + k);
    __m256d tre, tim;
    if (absolute) {
      __m256d mod = _mm256_sqrt_pd(mod2);
      tre = _mm256_div_pd(gr, mod);
      tim = _mm256_div_pd(gi, mod);
    } else {
      tre = _mm256_div_pd(_mm256_add_pd(_mm256_mul_pd(gr, rr), _mm256_mul_pd(gi, ri)), mod2);
      tim = _mm256_div_pd(_mm256_sub_pd(_mm256_mul_pd(gi, rr), _mm256_mul_pd(gr, ri)), mod2);
    }
    acc_re = _mm256_add_pd(acc_re, tre);
    acc_im = _mm256_add_pd(acc_im, tim);
  }
  alignas(32) double lr[4];
  alignas(32) double li[4];
  _mm256_store_pd(lr, acc_re);
  _mm256_store_pd(li, acc_im);
  for (std::size_t j = 0; k < n; ++k, ++j) {
    Complex2 t = kernel_sum_scalar(zr, zi, re + k, im + k, g_re + k, g_im + k, 1, power, absolute);
    lr[j] += t.re;
    li[j] += t.im;
  }
  return {(lr[0] + lr[1]) + (lr[2] + lr[3]), (li[0] + li[1]) + (li[2] + li[3])};
}

double exp_weighted_sum_avx2(const double* logabs, const double* p, const double* w, double shift,
                             std::size_t n) {
  const __m256d vshift = _mm256_set1_pd(shift);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = zero;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d x = _mm256_mul_pd(_mm256_loadu_pd(p + k), _mm256_sub_pd(_mm256_loadu_pd(logabs + k), vshift));
    __m256d e = exp4(x);
    __m256d wk = _mm256_loadu_pd(w + k);
    __m256d t = _mm256_mul_pd(wk, e);
    __m256d dead = _mm256_or_pd(_mm256_cmp_pd(wk, zero, _CMP_EQ_OQ), _mm256_cmp_pd(e, zero, _CMP_EQ_OQ));
    t = _mm256_blendv_pd(t, zero, dead);
    acc = _mm256_add_pd(acc, t);
  }
  alignas(32) double l[4];
  _mm256_store_pd(l, acc);
  for (std::size_t j = 0; k < n; ++k, ++j) l[j] += exp_weighted_sum_scalar(logabs + k, p + k, w + k, shift, 1);
  return (l[0] + l[1]) + (l[2] + l[3]);
}

}  // namespace varberg::simd::detail

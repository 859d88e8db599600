#pragma once

#include <cstddef>

namespace varberg::simd {

// Hot loops over quadrature nodes. Every kernel has a scalar reference and an
// AVX2 variant picked at runtime. Both accumulate in four interleaved lanes
// (term k goes to lane k % 4, lanes combined as (l0 + l1) + (l2 + l3)), so the
// two paths return bit-identical results.

enum class Level { Scalar, Avx2 };

Level detected_level();
Level active_level();
// Requests a level; falls back to Scalar when the CPU or build lacks AVX2.
// Returns the level actually in effect.
Level set_level(Level level);
const char* level_name(Level level);

// One-dimensional pseudo-hyperbolic ball E(a, s), s2 = s*s.
// Node w is inside iff |a - w|^2 < s2 * |1 - w conj(a)|^2.
double ball_mass(double ar, double ai, double s2, const double* re, const double* im,
                 const double* weight, std::size_t n);
std::size_t ball_count(double ar, double ai, double s2, const double* re, const double* im,
                       std::size_t n);

struct Complex2 {
  double re = 0.0;
  double im = 0.0;
};

// sum_k g_k / (1 - z conj(w_k))^m   (absolute: g_k / |1 - z conj(w_k)|^m), m >= 1.
Complex2 kernel_sum(double zr, double zi, const double* re, const double* im, const double* g_re,
                    const double* g_im, std::size_t n, int power, bool absolute);

// sum_k w_k * exp(p_k * (logabs_k - shift)); a term with w_k == 0 or a zero
// exponential contributes exactly 0.
double exp_weighted_sum(const double* logabs, const double* p, const double* w, double shift,
                        std::size_t n);

// The exponential used by exp_weighted_sum, exposed for tests.
double exp_scalar(double x);

namespace detail {
double ball_mass_scalar(double, double, double, const double*, const double*, const double*, std::size_t);
std::size_t ball_count_scalar(double, double, double, const double*, const double*, std::size_t);
Complex2 kernel_sum_scalar(double, double, const double*, const double*, const double*, const double*,
                           std::size_t, int, bool);
double exp_weighted_sum_scalar(const double*, const double*, const double*, double, std::size_t);

double ball_mass_avx2(double, double, double, const double*, const double*, const double*, std::size_t);
std::size_t ball_count_avx2(double, double, double, const double*, const double*, std::size_t);
Complex2 kernel_sum_avx2(double, double, const double*, const double*, const double*, const double*,
                         std::size_t, int, bool);
double exp_weighted_sum_avx2(const double*, const double*, const double*, double, std::size_t);
}  // namespace detail

}  // namespace varberg::simd

#include "varberg/simd.hpp"

namespace varberg::simd {

namespace {

bool cpu_has_avx2() {
#if defined(VARBERG_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Level& current() {
  static Level level = detected_level();
  return level;
}

}  // namespace

Level detected_level() {
  static const Level level = cpu_has_avx2() ? Level::Avx2 : Level::Scalar;
  return level;
}

Level active_level() { return current(); }

Level set_level(Level level) {
  if (level == Level::Avx2 && detected_level() != Level::Avx2) level = Level::Scalar;
  current() = level;
  return level;
}

const char* level_name(Level level) { return level == Level::Avx2 ? "avx2" : "scalar"; }

#if defined(VARBERG_HAVE_AVX2)
#define VARBERG_DISPATCH(name, ...) \
  (current() == Level::Avx2 ? detail::name##_avx2(__VA_ARGS__) : detail::name##_scalar(__VA_ARGS__))
#else
#define VARBERG_DISPATCH(name, ...) detail::name##_scalar(__VA_ARGS__)
#endif

double ball_mass(double ar, double ai, double s2, const double* re, const double* im, const double* weight,
                 std::size_t n) {
  return VARBERG_DISPATCH(ball_mass, ar, ai, s2, re, im, weight, n);
}

std::size_t ball_count(double ar, double ai, double s2, const double* re, const double* im, std::size_t n) {
  return VARBERG_DISPATCH(ball_count, ar, ai, s2, re, im, n);
}

Complex2 kernel_sum(double zr, double zi, const double* re, const double* im, const double* g_re,
                    const double* g_im, std::size_t n, int power, bool absolute) {
  return VARBERG_DISPATCH(kernel_sum, zr, zi, re, im, g_re, g_im, n, power, absolute);
}

double exp_weighted_sum(const double* logabs, const double* p, const double* w, double shift, std::size_t n) {
  return VARBERG_DISPATCH(exp_weighted_sum, logabs, p, w, shift, n);
}

}  // namespace varberg::simd

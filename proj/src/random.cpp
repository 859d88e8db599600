#include "varberg/random.hpp"

#include <cmath>

namespace varberg {

double Rng::uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  // Box-Muller, one value per call so the stream position is easy to reason about
  double u1 = uniform();
  double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

cplx Rng::complex_normal() {
  double a = normal();
  double b = normal();
  return {a, b};
}

Vec Rng::sphere_point(int n) {
  Vec v(n);
  double s = 0.0;
  do {
    for (int i = 0; i < n; ++i) v.c[i] = complex_normal();
    s = v.norm();
  } while (s < 1e-300);
  return (1.0 / s) * v;
}

Vec Rng::ball_vec(int n, double radius) {
  Vec d = sphere_point(n);
  double r = radius * std::pow(uniform(), 1.0 / (2.0 * n));
  return r * d;
}

Point Rng::ball_point(int n, double radius) {
  if (!(radius > 0.0 && radius < 1.0)) throw ArgumentError("ball_point radius must be in (0,1)");
  return Point(ball_vec(n, radius));
}

}  // namespace varberg

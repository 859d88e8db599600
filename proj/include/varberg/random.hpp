#pragma once

#include <cstdint>
#include <random>

#include "varberg/point.hpp"

namespace varberg {

// mt19937_64 with hand-rolled transforms; the std distributions are not
// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  std::uint64_t next() { return g_(); }
  double uniform();  // [0, 1), 53 bits
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  cplx complex_normal();

  Vec sphere_point(int n);
  // uniform in the Euclidean ball of the given radius (volume measure)
  Vec ball_vec(int n, double radius = 1.0);
  Point ball_point(int n, double radius);

  // split off an independent stream
  Rng fork() { return Rng(next() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 g_;
};

}  // namespace varberg

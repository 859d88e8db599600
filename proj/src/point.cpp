#include "varberg/point.hpp"

#include <cmath>
#include <string>

namespace varberg {

void require_dim(int n) {
  if (n < 1 || n > kMaxDim)
    throw ArgumentError("dimension must be in [1, " + std::to_string(kMaxDim) + "], got " + std::to_string(n));
}

void require_same_dim(const Vec& a, const Vec& b) {
  if (a.n != b.n)
    throw ArgumentError("dimension mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
}

Vec::Vec(int dim) : n(dim) { require_dim(dim); }

Vec::Vec(std::initializer_list<cplx> xs) : n(static_cast<int>(xs.size())) {
  require_dim(n);
  int i = 0;
  for (const auto& x : xs) c[i++] = x;
}

Vec Vec::from(const std::vector<cplx>& xs) {
  Vec v(static_cast<int>(xs.size()));
  for (int i = 0; i < v.n; ++i) v.c[i] = xs[i];
  return v;
}

double Vec::norm2() const {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::norm(c[i]);
  return s;
}

double Vec::norm() const { return std::sqrt(norm2()); }

std::vector<cplx> Vec::to_vector() const { return std::vector<cplx>(c.begin(), c.begin() + n); }

cplx inner(const Vec& z, const Vec& w) {
  require_same_dim(z, w);
  cplx s = 0.0;
  for (int i = 0; i < z.n; ++i) s += z.c[i] * std::conj(w.c[i]);
  return s;
}

Vec operator+(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.n);
  for (int i = 0; i < a.n; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Vec operator-(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.n);
  for (int i = 0; i < a.n; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Vec operator*(cplx s, const Vec& a) {
  Vec r(a.n);
  for (int i = 0; i < a.n; ++i) r.c[i] = s * a.c[i];
  return r;
}

Vec operator*(double s, const Vec& a) {
  Vec r(a.n);
  for (int i = 0; i < a.n; ++i) r.c[i] = s * a.c[i];
  return r;
}

Vec operator-(const Vec& a) { return -1.0 * a; }

Point::Point(const Vec& v) : v_(v) {
  require_dim(v.n);
  for (int i = 0; i < v.n; ++i)
    if (!std::isfinite(v.c[i].real()) || !std::isfinite(v.c[i].imag()))
      throw ArgumentError("point has a non-finite coordinate");
  if (!(v.norm2() < 1.0)) throw ArgumentError("point is not in the open unit ball (|z| >= 1)");
}

Point::Point(std::initializer_list<cplx> xs) : Point(Vec(xs)) {}

Point Point::origin(int n) { return Point(Vec(n)); }

}  // namespace varberg

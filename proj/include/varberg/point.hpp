#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include "varberg/types.hpp"

namespace varberg {

// Fixed-capacity complex vector. No ball constraint; used for directions,
// coefficient vectors and closed-ball evaluation.
struct Vec {
  int n = 0;
  std::array<cplx, kMaxDim> c{};

  Vec() = default;
  explicit Vec(int dim);
  Vec(std::initializer_list<cplx> xs);
  static Vec from(const std::vector<cplx>& xs);

  cplx& operator[](int i) { return c[i]; }
  const cplx& operator[](int i) const { return c[i]; }

  double norm2() const;
  double norm() const;
  std::vector<cplx> to_vector() const;
};

// <z, w> = sum z_i conj(w_i)
cplx inner(const Vec& z, const Vec& w);

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(cplx s, const Vec& a);
Vec operator*(double s, const Vec& a);
Vec operator-(const Vec& a);

void require_same_dim(const Vec& a, const Vec& b);
void require_dim(int n);

// A point of the open unit ball. Construction rejects |z| >= 1.
class Point {
 public:
  Point() = default;
  explicit Point(const Vec& v);
  Point(std::initializer_list<cplx> xs);

  static Point origin(int n);

  int dim() const { return v_.n; }
  const Vec& vec() const { return v_; }
  cplx operator[](int i) const { return v_.c[i]; }
  double norm2() const { return v_.norm2(); }
  double norm() const { return v_.norm(); }
  // 1 - |z|^2
  double defect() const { return 1.0 - v_.norm2(); }

 private:
  Vec v_;
};

inline cplx inner(const Point& z, const Point& w) { return inner(z.vec(), w.vec()); }

}  // namespace varberg

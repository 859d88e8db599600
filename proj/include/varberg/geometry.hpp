#pragma once

#include <vector>

#include "varberg/point.hpp"
#include "varberg/random.hpp"

namespace varberg {

// sigma_z(w); sigma_0(w) = -w.
Point involution(const Point& z, const Point& w);

// d(z, w) = |sigma_z(w)|
double pseudo_distance(const Point& z, const Point& w);
// 1 - d(z,w)^2 = (1-|z|^2)(1-|w|^2) / |1 - <z,w>|^2, without cancellation
double pseudo_defect(const Point& z, const Point& w);
// beta(z, w) = atanh d(z, w)
double bergman_distance(const Point& z, const Point& w);

// Conversion between Bergman radius r and pseudo-hyperbolic radius s = tanh r.
double s_from_r(double r);
double r_from_s(double s);

struct VolumeEstimate {
  double value = 0.0;
  double error = 0.0;  // 0 for closed forms
};

// Normalized volume of E(center, s).
VolumeEstimate ball_volume(const Point& center, double s);

// One-dimensional E(a, s) as a Euclidean disk.
struct Disk {
  cplx center;
  double radius = 0.0;
};
Disk euclidean_disk(cplx a, double s);
// Exact membership w in E(a, s) in one dimension; same predicate as the SIMD kernels.
bool in_ball_1d(cplx a, double s2, cplx w);
// Membership w in E(a, s) in any dimension.
bool in_ball(const Point& a, double s, const Point& w);

struct BoundaryFrame {
  Point anchor;
  std::vector<Point> vectors;  // a^2 .. a^n
};

BoundaryFrame boundary_frame(const Point& a);

// (|<z-w,a>| + sqrt(1-|a|) sum_j |<z-w,a^j>|) / |1 - <z,w>|
double anisotropic_distance(const Point& a, const Point& z, const Point& w);
double anisotropic_distance(const BoundaryFrame& frame, const Point& z, const Point& w);

// Unitary matrix stored by columns.
struct Unitary {
  int n = 0;
  std::vector<Vec> cols;
  Vec apply(const Vec& v) const;
  Point apply(const Point& p) const { return Point(apply(p.vec())); }
};

Unitary random_unitary(int n, Rng& rng);

// Points of E(a, s) with the Jacobian weight of sigma_a; weights sum to V(E(a,s)).
// Used for local averages over Bergman balls.
struct LocalNodes {
  std::vector<Point> nodes;
  std::vector<double> weights;
  double volume() const;
};
LocalNodes ball_nodes(const Point& a, double s, int radial, int angular, Rng* rng = nullptr);

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> x;
  std::vector<double> w;
};
const GaussRule& gauss_legendre(int n);

}  // namespace varberg

#include "varberg/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace varberg {

namespace {

// Rounding can push a computed image onto the sphere; pull it back inside.
Point to_ball(Vec v) {
  double n2 = v.norm2();
  if (!(n2 < 1.0)) {
    double scale = std::nextafter(1.0, 0.0) / std::sqrt(n2);
    v = scale * v;
    while (!(v.norm2() < 1.0)) v = std::nextafter(1.0, 0.0) * v;
  }
  return Point(v);
}

struct Split {
  Vec proj;  // P_z w
  Vec rest;  // w - P_z w
};

Split split(const Vec& z, const Vec& w) {
  double z2 = z.norm2();
  Split s{Vec(z.n), w};
  if (z2 > 0.0) {
    s.proj = (inner(w, z) / z2) * z;
    s.rest = w - s.proj;
  }
  return s;
}

}  // namespace

Point involution(const Point& z, const Point& w) {
  require_same_dim(z.vec(), w.vec());
  if (z.norm2() == 0.0) return Point(-w.vec());
  Split sp = split(z.vec(), w.vec());
  double sz = std::sqrt(1.0 - z.norm2());
  cplx den = 1.0 - inner(w.vec(), z.vec());
  Vec num = z.vec() - sp.proj - sz * sp.rest;
  return to_ball((1.0 / den) * num);
}

// Argument order is canonicalized so that d(z,w) and d(w,z) agree bit for bit.
static bool swap_order(const Vec& z, const Vec& w) {
  for (int i = 0; i < z.n; ++i) {
    if (z[i].real() != w[i].real()) return z[i].real() > w[i].real();
    if (z[i].imag() != w[i].imag()) return z[i].imag() > w[i].imag();
  }
  return false;
}

double pseudo_distance(const Point& z_in, const Point& w_in) {
  require_same_dim(z_in.vec(), w_in.vec());
  const double below_one = std::nextafter(1.0, 0.0);
  if (z_in.dim() == 1) {
    cplx z = z_in[0], w = w_in[0];
    double d = std::abs(z - w) / std::abs(1.0 - z * std::conj(w));
    return std::min(d, below_one);
  }
  bool sw = swap_order(z_in.vec(), w_in.vec());
  const Point& z = sw ? w_in : z_in;
  const Point& w = sw ? z_in : w_in;
  if (z.norm2() == 0.0) return std::min(w.norm(), below_one);
  Split sp = split(z.vec(), w.vec());
  double num = (z.vec() - sp.proj).norm2() + (1.0 - z.norm2()) * sp.rest.norm2();
  double den = std::norm(1.0 - inner(z.vec(), w.vec()));
  return std::min(std::sqrt(num / den), below_one);
}

double pseudo_defect(const Point& z_in, const Point& w_in) {
  require_same_dim(z_in.vec(), w_in.vec());
  bool sw = z_in.dim() > 1 && swap_order(z_in.vec(), w_in.vec());
  const Point& z = sw ? w_in : z_in;
  const Point& w = sw ? z_in : w_in;
  if (z.dim() == 1) return (1.0 - z.norm2()) * (1.0 - w.norm2()) / std::norm(1.0 - z[0] * std::conj(w[0]));
  return (1.0 - z.norm2()) * (1.0 - w.norm2()) / std::norm(1.0 - inner(z.vec(), w.vec()));
}

double bergman_distance(const Point& z, const Point& w) {
  double d = pseudo_distance(z, w);
  if (d == 0.0) return 0.0;
  return std::log1p(d) - 0.5 * std::log(pseudo_defect(z, w));
}

double s_from_r(double r) {
  if (!(r > 0.0)) throw ArgumentError("Bergman radius must be positive");
  return std::tanh(r);
}

double r_from_s(double s) {
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("pseudo-hyperbolic radius must be in (0,1)");
  return std::atanh(s);
}

Disk euclidean_disk(cplx a, double s) {
  double a2 = std::norm(a);
  double den = 1.0 - s * s * a2;
  return {a * (1.0 - s * s) / den, s * (1.0 - a2) / den};
}

bool in_ball_1d(cplx a, double s2, cplx w) {
  double ar = a.real(), ai = a.imag(), wr = w.real(), wi = w.imag();
  double dr = ar - wr, di = ai - wi;
  double num = dr * dr + di * di;
  double x = 1.0 - (wr * ar + wi * ai);
  double y = wi * ar - wr * ai;
  double den = x * x + y * y;
  return num < s2 * den;
}

bool in_ball(const Point& a, double s, const Point& w) {
  if (a.dim() == 1) return in_ball_1d(a[0], s * s, w[0]);
  return pseudo_distance(a, w) < s;
}

VolumeEstimate ball_volume(const Point& center, double s) {
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("ball_volume: s must be in (0,1)");
  int n = center.dim();
  if (n == 1) {
    double r = euclidean_disk(center[0], s).radius;
    return {r * r, 0.0};
  }
  double a = center.norm();
  double defect = 1.0 - center.norm2();
  double xmax = s * a;
  // 2n int_0^s rho (s^2 - rho^2)^{n-1} A(rho) drho,
  // A(rho) = mean over theta of (defect / |1 - rho a e^{i theta}|^2)^{n+1}
  auto integrate = [&](int radial, int angular) {
    const GaussRule& g = gauss_legendre(radial);
    double total = 0.0;
    for (int i = 0; i < radial; ++i) {
      double rho = 0.5 * s * (g.x[i] + 1.0);
      double wr = 0.5 * s * g.w[i];
      double x = rho * a;
      double mean = 0.0;
      for (int j = 0; j < angular; ++j) {
        double th = kTwoPi * j / angular;
        double q = 1.0 - 2.0 * x * std::cos(th) + x * x;
        mean += std::pow(defect / q, n + 1);
      }
      mean /= angular;
      total += wr * rho * std::pow(s * s - rho * rho, n - 1) * mean;
    }
    return 2.0 * n * total;
  };
  double gap = 1.0 - xmax;
  int radial = static_cast<int>(std::clamp(8.0 / gap, 48.0, 1024.0));
  int angular = static_cast<int>(std::clamp(40.0 / gap, 128.0, 16384.0));
  double coarse = integrate(radial, angular);
  double fine = integrate(2 * radial, 2 * angular);
  return {fine, std::abs(fine - coarse)};
}

BoundaryFrame boundary_frame(const Point& a) {
  double na = a.norm();
  if (!(na > 0.0)) throw ArgumentError("boundary_frame: anchor must be nonzero");
  int n = a.dim();
  BoundaryFrame f{a, {}};
  if (n == 1) return f;
  Vec v = (1.0 / na) * a.vec();
  // Householder reflector H with H v = alpha e_1, |alpha| = 1; U = diag(conj alpha, 1, ...) H
  cplx phase = std::abs(v[0]) > 0.0 ? v[0] / std::abs(v[0]) : cplx(1.0, 0.0);
  cplx alpha = -phase;
  Vec u = v;
  u[0] -= alpha;
  double u2 = u.norm2();
  for (int j = 1; j < n; ++j) {
    // H e_j = e_j - 2 u conj(u_j) / |u|^2
    Vec col(n);
    col[j] = 1.0;
    col = col - (2.0 * std::conj(u[j]) / u2) * u;
    f.vectors.emplace_back(to_ball(na * col));
  }
  return f;
}

double anisotropic_distance(const BoundaryFrame& frame, const Point& z, const Point& w) {
  const Point& a = frame.anchor;
  require_same_dim(a.vec(), z.vec());
  require_same_dim(z.vec(), w.vec());
  Vec diff = z.vec() - w.vec();
  double tangential = 0.0;
  for (const Point& aj : frame.vectors) tangential += std::abs(inner(diff, aj.vec()));
  double top = std::abs(inner(diff, a.vec())) + std::sqrt(1.0 - a.norm()) * tangential;
  return top / std::abs(1.0 - inner(z.vec(), w.vec()));
}

double anisotropic_distance(const Point& a, const Point& z, const Point& w) {
  return anisotropic_distance(boundary_frame(a), z, w);
}

Vec Unitary::apply(const Vec& v) const {
  if (v.n != n) throw ArgumentError("unitary dimension mismatch");
  Vec r(n);
  for (int j = 0; j < n; ++j) r = r + v[j] * cols[j];
  return r;
}

Unitary random_unitary(int n, Rng& rng) {
  require_dim(n);
  Unitary u{n, {}};
  while (static_cast<int>(u.cols.size()) < n) {
    Vec c(n);
    for (int i = 0; i < n; ++i) c[i] = rng.complex_normal();
    // two Gram-Schmidt passes
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& q : u.cols) c = c - inner(c, q) * q;
    double nc = c.norm();
    if (nc < 1e-8) continue;
    u.cols.push_back((1.0 / nc) * c);
  }
  return u;
}

double LocalNodes::volume() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

LocalNodes ball_nodes(const Point& a, double s, int radial, int angular, Rng* rng) {
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("ball_nodes: s must be in (0,1)");
  if (radial < 1 || angular < 1) throw ArgumentError("ball_nodes: resolution must be positive");
  int n = a.dim();
  double defect = 1.0 - a.norm2();
  LocalNodes out;
  auto push = [&](const Vec& v, double base) {
    double jac = std::pow(defect / std::norm(1.0 - inner(v, a.vec())), n + 1);
    out.nodes.push_back(involution(a, Point(v)));
    out.weights.push_back(base * jac);
  };
  if (n == 1) {
    const GaussRule& g = gauss_legendre(radial);
    for (int i = 0; i < radial; ++i) {
      double rho = 0.5 * s * (g.x[i] + 1.0);
      double wr = 0.5 * s * g.w[i] * 2.0 * rho / angular;
      for (int j = 0; j < angular; ++j) {
        double th = kTwoPi * (j + 0.5) / angular;
        push(Vec{std::polar(rho, th)}, wr);
      }
    }
    return out;
  }
  if (rng == nullptr) throw ArgumentError("ball_nodes: dimension >= 2 needs a random stream");
  int count = radial * angular;
  double base = std::pow(s, 2 * n) / count;
  for (int k = 0; k < count; ++k) {
    double u = (k + rng->uniform()) / count;
    Vec dir = rng->sphere_point(n);
    push(s * std::pow(u, 1.0 / (2.0 * n)) * dir, base);
  }
  return out;
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<GaussRule>();
  rule->x.resize(n);
  rule->w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      double pn = n == 1 ? x : p1;
      double pm = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pm) / (x * x - 1.0);
      double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    double pn = n == 1 ? x : p1;
    double pm = n == 1 ? 1.0 : p0;
    dp = n * (x * pn - pm) / (x * x - 1.0);
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->x[i] = -x;
    rule->x[n - 1 - i] = x;
    rule->w[i] = w;
    rule->w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule->x[n / 2] = 0.0;
  auto& ref = *rule;
  cache.emplace(n, std::move(rule));
  return ref;
}

}  // namespace varberg

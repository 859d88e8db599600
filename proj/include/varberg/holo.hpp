#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "varberg/point.hpp"

namespace varberg {

class SelfMap;

// Evaluable expression on the ball. Leaves: constants, monomials z^alpha,
// coordinates and their conjugates, kernel powers (1 - <z,a>)^{-N} on the
// principal branch, boundary factors (1 - |z|^2)^beta. Interior nodes: sum,
// product, scalar multiple, composition with a self-map, and |f|^q.
// Conjugates, boundary factors and moduli clear the holomorphic flag.
class HoloFunction {
 public:
  enum class Kind { Const, Monomial, ConjCoord, KernelPower, BoundaryFactor, Sum, Product, Scale, Compose, AbsPower };

  HoloFunction() = default;

  static HoloFunction constant(int n, cplx c);
  static HoloFunction zero(int n) { return constant(n, 0.0); }
  static HoloFunction monomial(const std::vector<int>& alpha, cplx coef = 1.0);
  static HoloFunction coord(int n, int i);
  static HoloFunction conj_coord(int n, int i);
  static HoloFunction kernel_power(const Point& a, double N);
  static HoloFunction boundary_factor(int n, double beta);
  static HoloFunction abs_power(const HoloFunction& f, double q);

  HoloFunction operator+(const HoloFunction& g) const;
  HoloFunction operator-(const HoloFunction& g) const;
  HoloFunction operator*(const HoloFunction& g) const;
  HoloFunction scale(cplx s) const;
  HoloFunction compose(const SelfMap& phi) const;

  cplx eval(const Vec& z) const;
  cplx eval(const Point& z) const { return eval(z.vec()); }
  cplx operator()(const Point& z) const { return eval(z.vec()); }

  int dim() const;
  bool holomorphic() const;
  bool valid() const { return node_ != nullptr; }
  // structurally identical to zero (a zero constant or a zero scalar multiple)
  bool is_zero() const;
  Kind kind() const;
  std::string describe() const;

 private:
  struct Node;
  explicit HoloFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Holomorphic map of the ball into itself, one HoloFunction per coordinate.
class SelfMap {
 public:
  SelfMap() = default;
  // Samples a boundary-refined grid; throws ValidationError if an image leaves the ball.
  static SelfMap make(const std::vector<HoloFunction>& components, std::uint64_t seed = 1);
  static SelfMap identity(int n);
  // z -> c z, |c| <= 1
  static SelfMap scalar(int n, cplx c);

  Vec apply(const Vec& z) const;
  Point apply(const Point& z) const;
  int dim() const { return static_cast<int>(comps_.size()); }
  const std::vector<HoloFunction>& components() const { return comps_; }
  double sup_modulus_estimate() const { return sup_; }
  bool is_identity() const { return identity_; }
  std::string describe() const;

 private:
  std::vector<HoloFunction> comps_;
  double sup_ = 0.0;
  bool identity_ = false;
};

// Radii used to probe boundary behaviour: 0 .. 1 - 1e-6, refined toward the sphere.
std::vector<double> boundary_refined_radii();

}  // namespace varberg

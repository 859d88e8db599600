#include "varberg/holo.hpp"

#include <cmath>
#include <sstream>

#include "varberg/random.hpp"

namespace varberg {

struct HoloFunction::Node {
  Kind kind = Kind::Const;
  int n = 1;
  bool holo = true;
  cplx coef = 0.0;
  std::vector<int> alpha;
  int index = 0;
  Vec a;
  double power = 0.0;
  std::vector<HoloFunction> kids;
  std::shared_ptr<const SelfMap> map;
};

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string fmt(cplx c) {
  if (c.imag() == 0.0) return fmt(c.real());
  return "(" + fmt(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt(std::abs(c.imag())) + "i)";
}

}  // namespace

HoloFunction HoloFunction::constant(int n, cplx c) {
  require_dim(n);
  auto node = std::make_shared<Node>();
  node->kind = Kind::Const;
  node->n = n;
  node->coef = c;
  return HoloFunction(node);
}

HoloFunction HoloFunction::monomial(const std::vector<int>& alpha, cplx coef) {
  require_dim(static_cast<int>(alpha.size()));
  for (int a : alpha)
    if (a < 0) throw ArgumentError("monomial multi-index entries must be >= 0");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Monomial;
  node->n = static_cast<int>(alpha.size());
  node->alpha = alpha;
  node->coef = coef;
  return HoloFunction(node);
}

HoloFunction HoloFunction::coord(int n, int i) {
  require_dim(n);
  if (i < 0 || i >= n) throw ArgumentError("coordinate index out of range");
  std::vector<int> alpha(n, 0);
  alpha[i] = 1;
  return monomial(alpha);
}

HoloFunction HoloFunction::conj_coord(int n, int i) {
  require_dim(n);
  if (i < 0 || i >= n) throw ArgumentError("coordinate index out of range");
  auto node = std::make_shared<Node>();
  node->kind = Kind::ConjCoord;
  node->n = n;
  node->index = i;
  node->holo = false;
  return HoloFunction(node);
}

HoloFunction HoloFunction::kernel_power(const Point& a, double N) {
  if (!(N > 0.0) || !std::isfinite(N)) throw ArgumentError("kernel_power needs N > 0");
  auto node = std::make_shared<Node>();
  node->kind = Kind::KernelPower;
  node->n = a.dim();
  node->a = a.vec();
  node->power = N;
  return HoloFunction(node);
}

HoloFunction HoloFunction::boundary_factor(int n, double beta) {
  require_dim(n);
  if (!std::isfinite(beta)) throw ArgumentError("boundary_factor exponent must be finite");
  auto node = std::make_shared<Node>();
  node->kind = Kind::BoundaryFactor;
  node->n = n;
  node->power = beta;
  node->holo = beta == 0.0;
  return HoloFunction(node);
}

HoloFunction HoloFunction::abs_power(const HoloFunction& f, double q) {
  if (!f.valid()) throw ArgumentError("abs_power of an empty function");
  if (!(q > 0.0)) throw ArgumentError("abs_power needs q > 0");
  auto node = std::make_shared<Node>();
  node->kind = Kind::AbsPower;
  node->n = f.dim();
  node->power = q;
  node->holo = false;
  node->kids = {f};
  return HoloFunction(node);
}

static void require_pair(const HoloFunction& f, const HoloFunction& g) {
  if (!f.valid() || !g.valid()) throw ArgumentError("operation on an empty function");
  if (f.dim() != g.dim()) throw ArgumentError("function dimension mismatch");
}

HoloFunction HoloFunction::operator+(const HoloFunction& g) const {
  require_pair(*this, g);
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->n = dim();
  node->holo = holomorphic() && g.holomorphic();
  node->kids = {*this, g};
  return HoloFunction(node);
}

HoloFunction HoloFunction::operator-(const HoloFunction& g) const { return *this + g.scale(-1.0); }

HoloFunction HoloFunction::operator*(const HoloFunction& g) const {
  require_pair(*this, g);
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->n = dim();
  node->holo = holomorphic() && g.holomorphic();
  node->kids = {*this, g};
  return HoloFunction(node);
}

HoloFunction HoloFunction::scale(cplx s) const {
  if (!valid()) throw ArgumentError("scale of an empty function");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Scale;
  node->n = dim();
  node->holo = holomorphic();
  node->coef = s;
  node->kids = {*this};
  return HoloFunction(node);
}

HoloFunction HoloFunction::compose(const SelfMap& phi) const {
  if (!valid()) throw ArgumentError("compose of an empty function");
  if (phi.dim() != dim()) throw ArgumentError("composition dimension mismatch");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Compose;
  node->n = phi.dim();
  node->holo = holomorphic();
  node->kids = {*this};
  node->map = std::make_shared<const SelfMap>(phi);
  return HoloFunction(node);
}

int HoloFunction::dim() const { return node_ ? node_->n : 0; }
bool HoloFunction::holomorphic() const { return node_ && node_->holo; }
HoloFunction::Kind HoloFunction::kind() const {
  if (!node_) throw ArgumentError("empty function");
  return node_->kind;
}

bool HoloFunction::is_zero() const {
  if (!node_) return false;
  if (node_->kind == Kind::Const) return node_->coef == 0.0;
  if (node_->kind == Kind::Scale) return node_->coef == 0.0 || node_->kids[0].is_zero();
  return false;
}

cplx HoloFunction::eval(const Vec& z) const {
  if (!node_) throw ArgumentError("evaluating an empty function");
  const Node& nd = *node_;
  if (z.n != nd.n) throw ArgumentError("function evaluated at a point of the wrong dimension");
  switch (nd.kind) {
    case Kind::Const:
      return nd.coef;
    case Kind::Monomial: {
      cplx v = nd.coef;
      for (int i = 0; i < nd.n; ++i)
        for (int k = 0; k < nd.alpha[i]; ++k) v *= z[i];
      return v;
    }
    case Kind::ConjCoord:
      return std::conj(z[nd.index]);
    case Kind::KernelPower: {
      cplx q = 1.0 - inner(z, nd.a);
      return std::exp(-nd.power * std::log(q));
    }
    case Kind::BoundaryFactor: {
      if (nd.power == 0.0) return 1.0;
      double d = 1.0 - z.norm2();
      if (d <= 0.0) return nd.power > 0.0 ? 0.0 : INFINITY;
      return std::exp(nd.power * std::log(d));
    }
    case Kind::Sum:
      return nd.kids[0].eval(z) + nd.kids[1].eval(z);
    case Kind::Product:
      return nd.kids[0].eval(z) * nd.kids[1].eval(z);
    case Kind::Scale:
      return nd.coef == 0.0 ? cplx(0.0) : nd.coef * nd.kids[0].eval(z);
    case Kind::Compose:
      return nd.kids[0].eval(nd.map->apply(z));
    case Kind::AbsPower: {
      double m = std::abs(nd.kids[0].eval(z));
      return m == 0.0 ? 0.0 : std::exp(nd.power * std::log(m));
    }
  }
  return 0.0;
}

std::string HoloFunction::describe() const {
  if (!node_) return "<empty>";
  const Node& nd = *node_;
  switch (nd.kind) {
    case Kind::Const:
      return fmt(nd.coef);
    case Kind::Monomial: {
      std::string s = fmt(nd.coef);
      for (int i = 0; i < nd.n; ++i)
        if (nd.alpha[i] > 0) s += "*z" + std::to_string(i + 1) + (nd.alpha[i] > 1 ? "^" + std::to_string(nd.alpha[i]) : "");
      return s;
    }
    case Kind::ConjCoord:
      return "conj(z" + std::to_string(nd.index + 1) + ")";
    case Kind::KernelPower: {
      std::string s = "(1-<z,(";
      for (int i = 0; i < nd.n; ++i) s += (i ? "," : "") + fmt(nd.a[i]);
      return s + ")>)^-" + fmt(nd.power);
    }
    case Kind::BoundaryFactor:
      return "(1-|z|^2)^" + fmt(nd.power);
    case Kind::Sum:
      return "(" + nd.kids[0].describe() + " + " + nd.kids[1].describe() + ")";
    case Kind::Product:
      return "(" + nd.kids[0].describe() + " * " + nd.kids[1].describe() + ")";
    case Kind::Scale:
      return fmt(nd.coef) + "*" + nd.kids[0].describe();
    case Kind::Compose:
      return nd.kids[0].describe() + " o " + nd.map->describe();
    case Kind::AbsPower:
      return "|" + nd.kids[0].describe() + "|^" + fmt(nd.power);
  }
  return "?";
}

std::vector<double> boundary_refined_radii() {
  std::vector<double> r;
  for (int i = 0; i < 20; ++i) r.push_back(i / 20.0);
  // 1 - 10^{-k/4}, k = 4 .. 24
  for (int k = 4; k <= 24; ++k) r.push_back(1.0 - std::pow(10.0, -k / 4.0));
  return r;
}

SelfMap SelfMap::make(const std::vector<HoloFunction>& components, std::uint64_t seed) {
  if (components.empty()) throw ArgumentError("self-map needs components");
  int n = static_cast<int>(components.size());
  require_dim(n);
  for (const auto& c : components) {
    if (!c.valid()) throw ArgumentError("self-map component is empty");
    if (c.dim() != n) throw ArgumentError("self-map component dimension mismatch");
    if (!c.holomorphic()) throw ValidationError("self-map components must be holomorphic");
  }
  SelfMap m;
  m.comps_ = components;
  Rng rng(seed);
  const int angular = 128;
  double sup = 0.0;
  for (double rho : boundary_refined_radii()) {
    for (int j = 0; j < angular; ++j) {
      Vec dir(n);
      if (n == 1) dir[0] = std::polar(1.0, kTwoPi * (j + 0.5) / angular);
      else dir = rng.sphere_point(n);
      Vec img = m.apply(rho * dir);
      double mod = img.norm();
      if (!std::isfinite(mod) || !(mod < 1.0))
        throw ValidationError("self-map leaves the ball: |phi(z)| = " + std::to_string(mod) + " at |z| = " + std::to_string(rho));
      sup = std::max(sup, mod);
    }
  }
  m.sup_ = sup;
  return m;
}

SelfMap SelfMap::identity(int n) {
  require_dim(n);
  std::vector<HoloFunction> comps;
  for (int i = 0; i < n; ++i) comps.push_back(HoloFunction::coord(n, i));
  SelfMap m = make(comps);
  m.identity_ = true;
  return m;
}

SelfMap SelfMap::scalar(int n, cplx c) {
  require_dim(n);
  std::vector<HoloFunction> comps;
  for (int i = 0; i < n; ++i) comps.push_back(HoloFunction::coord(n, i).scale(c));
  return make(comps);
}

Vec SelfMap::apply(const Vec& z) const {
  if (identity_) {
    if (z.n != dim()) throw ArgumentError("self-map applied to a point of the wrong dimension");
    return z;
  }
  Vec out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = comps_[i].eval(z);
  return out;
}

Point SelfMap::apply(const Point& z) const { return Point(apply(z.vec())); }

std::string SelfMap::describe() const {
  if (identity_) return "id";
  std::string s = "(";
  for (int i = 0; i < dim(); ++i) s += (i ? ", " : "") + comps_[i].describe();
  return s + ")";
}

}  // namespace varberg

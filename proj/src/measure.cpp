#include "varberg/measure.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "varberg/geometry.hpp"
#include "varberg/random.hpp"

namespace varberg {

namespace {

constexpr double kGolden = 0.61803398874989484820;

std::vector<double> panel_edges(double rho_max) {
  std::vector<double> e{0.0};
  for (int j = 1; j < 60; ++j) {
    double x = 1.0 - std::ldexp(1.0, -j);
    if (!(x < rho_max)) break;
    e.push_back(x);
  }
  e.push_back(rho_max);
  e.push_back(1.0);
  return e;
}

std::size_t circle_count(const LebesgueSpec& spec, double rho) {
  double m = spec.angular;
  if (spec.kappa > 0.0) {
    double r = std::min(rho, spec.grade_until);
    m = std::max(m, std::ceil(spec.kappa * kTwoPi * r / (1.0 - r * r)));
  }
  return static_cast<std::size_t>(m);
}

void check_spec(const LebesgueSpec& spec) {
  require_dim(spec.n);
  if (spec.radial < 1 || spec.angular < 1) throw ArgumentError("lebesgue: resolution must be positive");
  if (spec.n == 1) {
    if (!(spec.rho_max > 0.0 && spec.rho_max < 1.0)) throw ArgumentError("lebesgue: rho_max must be in (0,1)");
    if (spec.kappa < 0.0) throw ArgumentError("lebesgue: grading kappa must be >= 0");
    if (spec.kappa > 0.0 && !(spec.grade_until > 0.0 && spec.grade_until < 1.0))
      throw ArgumentError("lebesgue: grade_until must be in (0,1)");
  }
}

}  // namespace

const char* measure_kind_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::Lebesgue: return "lebesgue";
    case MeasureKind::Density: return "density";
    case MeasureKind::Pullback: return "pullback";
    case MeasureKind::PointMasses: return "point_masses";
    case MeasureKind::Empty: return "empty";
  }
  return "?";
}

double striped_sum(const double* x, std::size_t n) {
  double l[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) l[k & 3] += x[k];
  return (l[0] + l[1]) + (l[2] + l[3]);
}

PolarGrid PolarGrid::make(const LebesgueSpec& spec) {
  check_spec(spec);
  if (spec.n != 1) throw ArgumentError("PolarGrid is one-dimensional");
  std::vector<double> edges = panel_edges(spec.rho_max);
  std::size_t panels = edges.size() - 1;
  if (static_cast<std::size_t>(spec.radial) < panels)
    throw ArgumentError("lebesgue: radial resolution " + std::to_string(spec.radial) + " is below the panel count " +
                        std::to_string(panels));
  std::size_t base = spec.radial / panels, extra = spec.radial % panels;
  PolarGrid g;
  for (std::size_t p = 0; p < panels; ++p) {
    int m = static_cast<int>(base + (p < extra ? 1 : 0));
    const GaussRule& rule = gauss_legendre(m);
    double a = edges[p], b = edges[p + 1];
    for (int i = 0; i < m; ++i) {
      double rho = 0.5 * (a + b) + 0.5 * (b - a) * rule.x[i];
      double w = 0.5 * (b - a) * rule.w[i];
      std::size_t cnt = circle_count(spec, rho);
      std::size_t ring = g.rho.size();
      g.rho.push_back(rho);
      g.count.push_back(cnt);
      g.node_weight.push_back(2.0 * rho * w / static_cast<double>(cnt));
      g.frac.push_back(std::fmod(static_cast<double>(ring) * kGolden, 1.0));
    }
  }
  return g;
}

cplx PolarGrid::node(std::size_t ring, std::size_t m) const {
  double step = kTwoPi / static_cast<double>(count[ring]);
  return std::polar(rho[ring], (static_cast<double>(m) + frac[ring]) * step);
}

std::size_t PolarGrid::size() const {
  std::size_t s = 0;
  for (std::size_t c : count) s += c;
  return s;
}

double PolarGrid::total_mass() const {
  std::vector<double> ring(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) ring[i] = node_weight[i] * static_cast<double>(count[i]);
  return striped_sum(ring.data(), ring.size());
}

double PolarGrid::ball_mass(cplx a, double s) const {
  Disk d = euclidean_disk(a, s);
  double s2 = s * s;
  double c = std::abs(d.center);
  double total = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    Window w = band_window(rho[i], rho[i], d);
    if (w.kind == 0) continue;
    auto M = static_cast<long long>(count[i]);
    auto at = [&](long long m) {
      long long k = ((m % M) + M) % M;
      return node(i, static_cast<std::size_t>(k));
    };
    // nodes of the arc around `center` whose membership equals `want`; the
    // arc's complement on the circle has the other membership
    auto arc = [&](double center, double half, bool want) {
      double step = kTwoPi / static_cast<double>(M);
      auto lo = static_cast<long long>(std::ceil((center - half) / step - frac[i]));
      auto hi = static_cast<long long>(std::floor((center + half) / step - frac[i]));
      while (lo <= hi && in_ball_1d(a, s2, at(lo)) != want) ++lo;
      while (hi >= lo && in_ball_1d(a, s2, at(hi)) != want) --hi;
      return lo <= hi ? std::min(hi - lo + 1, M) : 0LL;
    };
    long long inside = 0;
    if (w.kind == 2) {
      inside = arc(w.center, w.half, true);
    } else if (rho[i] + c <= d.radius * (1.0 - 1e-9)) {
      inside = M;
    } else if (c > 0.0 && rho[i] > d.radius - c) {
      // the disk holds the origin and cuts this circle: count the outside arc
      double cs = (rho[i] * rho[i] + c * c - d.radius * d.radius) / (2.0 * rho[i] * c);
      double h = std::acos(std::clamp(cs, -1.0, 1.0));
      inside = M - arc(angle_of(d.center) + kPi, kPi - h + 1e-9, false);
    } else {
      for (long long m = 0; m < M; ++m)
        if (in_ball_1d(a, s2, at(m))) ++inside;
    }
    total += node_weight[i] * static_cast<double>(inside);
  }
  return total;
}

QuadMeasure::QuadMeasure(int n, std::vector<double> re, std::vector<double> im, std::vector<double> weights,
                         Provenance prov)
    : n_(n),
      re_(std::make_shared<const std::vector<double>>(std::move(re))),
      im_(std::make_shared<const std::vector<double>>(std::move(im))),
      weights_(std::move(weights)),
      prov_(std::move(prov)) {
  require_dim(n);
  if (re_->size() != weights_.size() * static_cast<std::size_t>(n) || im_->size() != re_->size())
    throw ArgumentError("QuadMeasure: coordinate and weight counts disagree");
  for (std::size_t k = 0; k < weights_.size(); ++k)
    if (!(weights_[k] >= 0.0)) throw ArgumentError("QuadMeasure: negative or NaN weight at node " + std::to_string(k));
}

QuadMeasure QuadMeasure::empty(int n) {
  Provenance p;
  p.kind = MeasureKind::Empty;
  p.descriptor = "zero measure";
  return QuadMeasure(n, {}, {}, {}, p);
}

void QuadMeasure::set_ring_offsets(std::vector<std::size_t> offsets) {
  if (n_ != 1) throw ArgumentError("ring offsets are one-dimensional");
  if (offsets.empty() || offsets.front() != 0 || offsets.back() != size())
    throw ArgumentError("ring offsets must span the node list");
  rings_ = std::move(offsets);
  index_.reset();
  polar_.reset();
}

Vec QuadMeasure::node(std::size_t k) const {
  Vec v(n_);
  for (int i = 0; i < n_; ++i) v[i] = cplx((*re_)[k * n_ + i], (*im_)[k * n_ + i]);
  return v;
}

double QuadMeasure::total_mass() const { return striped_sum(weights_.data(), weights_.size()); }

bool QuadMeasure::has_sentinel() const { return first_sentinel() < size(); }

std::size_t QuadMeasure::first_sentinel() const {
  for (std::size_t k = 0; k < weights_.size(); ++k)
    if (std::isinf(weights_[k])) return k;
  return size();
}

bool QuadMeasure::all_zero() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double w) { return w == 0.0; });
}

QuadMeasure QuadMeasure::with_weights(std::vector<double> w, Provenance prov) const {
  if (w.size() != size()) throw ArgumentError("with_weights: weight count differs from node count");
  for (std::size_t k = 0; k < w.size(); ++k)
    if (!(w[k] >= 0.0)) throw ArgumentError("QuadMeasure: negative or NaN weight at node " + std::to_string(k));
  QuadMeasure m = *this;
  m.weights_ = std::move(w);
  m.prov_ = std::move(prov);
  m.polar_.reset();
  m.index_.reset();
  return m;
}

const DiskIndex& QuadMeasure::index() const {
  if (n_ != 1) throw ArgumentError("measure index is one-dimensional");
  if (!index_) {
    std::vector<cplx> pts(size());
    for (std::size_t k = 0; k < size(); ++k) pts[k] = cplx((*re_)[k], (*im_)[k]);
    index_ = std::make_shared<const DiskIndex>(rings_.empty() ? DiskIndex::from_points(pts, weights_)
                                                              : DiskIndex::from_groups(pts, weights_, rings_));
  }
  return *index_;
}

double QuadMeasure::ball_mass(const Point& a, double s) const {
  if (a.dim() != n_) throw ArgumentError("ball_mass: dimension mismatch");
  if (!(s > 0.0 && s < 1.0)) throw ArgumentError("ball_mass: s must be in (0,1)");
  if (n_ == 1) return polar_ ? polar_->ball_mass(a[0], s) : index().ball_mass(a[0], s);
  double l[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < size(); ++k)
    if (pseudo_distance(a, Point(node(k))) < s) l[k & 3] += weights_[k];
  return (l[0] + l[1]) + (l[2] + l[3]);
}

QuadMeasure lebesgue(const LebesgueSpec& spec) {
  check_spec(spec);
  Provenance prov;
  prov.kind = MeasureKind::Lebesgue;
  prov.radial = spec.radial;
  prov.angular = spec.angular;
  prov.rho_max = spec.rho_max;
  prov.kappa = spec.kappa;
  prov.grade_until = spec.grade_until;
  std::ostringstream os;
  os << "lebesgue(n=" << spec.n << ", " << spec.radial << "x" << spec.angular;
  if (spec.n == 1) os << ", rho_max=" << spec.rho_max;
  if (spec.kappa > 0.0) os << ", kappa=" << spec.kappa << ", until=" << spec.grade_until;
  os << ")";
  prov.descriptor = os.str();

  if (spec.n == 1) {
    PolarGrid g = PolarGrid::make(spec);
    std::size_t total = g.size();
    std::vector<double> re, im, w;
    re.reserve(total);
    im.reserve(total);
    w.reserve(total);
    std::vector<std::size_t> offsets{0};
    for (std::size_t i = 0; i < g.rho.size(); ++i) {
      for (std::size_t m = 0; m < g.count[i]; ++m) {
        cplx z = g.node(i, m);
        re.push_back(z.real());
        im.push_back(z.imag());
        w.push_back(g.node_weight[i]);
      }
      offsets.push_back(re.size());
    }
    QuadMeasure mu(1, std::move(re), std::move(im), std::move(w), prov);
    mu.set_ring_offsets(std::move(offsets));
    mu.polar_ = std::make_shared<const PolarGrid>(std::move(g));
    return mu;
  }

  Rng rng(spec.seed);
  std::size_t count = static_cast<std::size_t>(spec.radial) * static_cast<std::size_t>(spec.angular);
  std::vector<double> re(count * spec.n), im(count * spec.n), w(count, 1.0 / static_cast<double>(count));
  for (std::size_t k = 0; k < count; ++k) {
    double u = (static_cast<double>(k) + rng.uniform()) / static_cast<double>(count);
    double r = std::pow(u, 1.0 / (2.0 * spec.n));
    Vec dir = rng.sphere_point(spec.n);
    for (int i = 0; i < spec.n; ++i) {
      re[k * spec.n + i] = r * dir[i].real();
      im[k * spec.n + i] = r * dir[i].imag();
    }
  }
  return QuadMeasure(spec.n, std::move(re), std::move(im), std::move(w), prov);
}

std::string Density::describe() const {
  std::ostringstream os;
  os << "(1-|w|^2)^" << boundary_power;
  if (modulus_of.valid()) os << " * |" << modulus_of.describe() << "|^" << modulus_power;
  return os.str();
}

QuadMeasure apply_density(const QuadMeasure& base, const Density& density) {
  if (density.modulus_of.valid() && density.modulus_of.dim() != base.dim())
    throw ArgumentError("density function dimension mismatch");
  std::vector<double> w(base.size());
  // radial density on a polar rule: evaluate once per circle so circles keep equal weights
  const PolarGrid* grid = density.modulus_of.valid() ? nullptr : base.polar();
  std::vector<double> ring_of;
  if (grid) {
    ring_of.resize(base.size());
    for (std::size_t i = 0; i < grid->rho.size(); ++i)
      std::fill(ring_of.begin() + static_cast<std::ptrdiff_t>(base.ring_offsets()[i]),
                ring_of.begin() + static_cast<std::ptrdiff_t>(base.ring_offsets()[i + 1]), grid->rho[i]);
  }
  for (std::size_t k = 0; k < base.size(); ++k) {
    Vec z = base.node(k);
    double f = 1.0;
    double r2 = grid ? ring_of[k] * ring_of[k] : z.norm2();
    if (density.boundary_power != 0.0) f = std::exp(density.boundary_power * std::log1p(-r2));
    if (density.modulus_of.valid()) {
      double m = std::abs(density.modulus_of.eval(z));
      f *= m == 0.0 ? 0.0 : std::exp(density.modulus_power * std::log(m));
    }
    double v = base.weights()[k] == 0.0 ? 0.0 : base.weights()[k] * f;
    if (!std::isfinite(v) && !std::isinf(base.weights()[k])) {
      std::ostringstream os;
      os.precision(17);
      os << "density is not finite at node " << k << " (";
      for (int i = 0; i < z.n; ++i) os << (i ? ", " : "") << z[i].real() << (z[i].imag() < 0 ? "" : "+") << z[i].imag() << "i";
      os << ")";
      throw NumericalError(os.str());
    }
    w[k] = v;
  }
  Provenance prov = base.provenance();
  prov.kind = MeasureKind::Density;
  prov.descriptor = density.describe() + " * " + base.provenance().descriptor;
  QuadMeasure out = base.with_weights(std::move(w), prov);
  if (grid) {
    auto g = std::make_shared<PolarGrid>(*grid);
    for (std::size_t i = 0; i < g->rho.size(); ++i) g->node_weight[i] = out.weights_[base.ring_offsets()[i]];
    out.polar_ = std::move(g);
  }
  return out;
}

QuadMeasure point_masses(int n, const std::vector<std::pair<Vec, double>>& masses) {
  require_dim(n);
  std::vector<double> re, im, w;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const auto& [z, m] = masses[k];
    if (z.n != n) throw ArgumentError("point mass " + std::to_string(k) + " has the wrong dimension");
    Point p(z);
    if (!(m >= 0.0)) throw ArgumentError("point mass " + std::to_string(k) + " has a negative weight");
    for (int i = 0; i < n; ++i) {
      re.push_back(p[i].real());
      im.push_back(p[i].imag());
    }
    w.push_back(m);
  }
  Provenance prov;
  prov.kind = MeasureKind::PointMasses;
  prov.descriptor = "point_masses(" + std::to_string(masses.size()) + ")";
  return QuadMeasure(n, std::move(re), std::move(im), std::move(w), prov);
}

}  // namespace varberg

#include "varberg/operators.hpp"

#include <cmath>

#include "varberg/geometry.hpp"

namespace varberg {

namespace {

constexpr double kLogMax = 709.0;

double safe_exp(double x) {
  if (std::isnan(x)) throw NumericalError("pull-back integrand is NaN");
  if (x > kLogMax) return INFINITY;
  return std::exp(x);
}

double log_abs(cplx v) {
  double m = std::abs(v);
  return m == 0.0 ? -INFINITY : std::log(m);
}

}  // namespace

DiffSpec make_diff(const WcoSpec& first, const WcoSpec& second, const ExponentField& p, std::optional<double> alpha) {
  validate(first);
  validate(second);
  if (first.phi.dim() != second.phi.dim()) throw ArgumentError("difference: dimension mismatch");
  ExponentField pv = p.is_validated() ? p : p.validated();
  double floor_alpha = (first.phi.dim() + 1) * pv.p_plus();
  DiffSpec d{first, second, alpha.value_or(floor_alpha)};
  if (!(d.alpha >= floor_alpha))
    throw ArgumentError("difference: alpha = " + std::to_string(d.alpha) + " is below (n+1)p+ = " + std::to_string(floor_alpha));
  return d;
}

void validate(const ToeplitzSpec& spec) {
  if (!(spec.beta >= 0.0)) throw ArgumentError("Toeplitz operator needs beta >= 0");
}

void validate(const WcoSpec& spec) {
  if (!spec.u.valid()) throw ArgumentError("weighted composition needs a weight u");
  if (spec.phi.dim() == 0) throw ArgumentError("weighted composition needs a self-map");
  if (spec.u.dim() != spec.phi.dim()) throw ArgumentError("weight and self-map dimensions differ");
}

ToeplitzImage::ToeplitzImage(const ToeplitzSpec& spec, const HoloFunction& f)
    : ki_((validate(spec), f), spec.mu, static_cast<double>(spec.mu.dim() + 1) + spec.beta) {}

cplx apply_toeplitz(const ToeplitzSpec& spec, const HoloFunction& f, const Point& z) {
  validate(spec);
  if (spec.mu.size() == 0) return 0.0;
  return ToeplitzImage(spec, f).at(z);
}

cplx apply_wco(const WcoSpec& spec, const HoloFunction& f, const Point& z) {
  cplx u = spec.u.eval(z);
  if (u == 0.0) return 0.0;
  return u * f.eval(spec.phi.apply(z.vec()));
}

cplx apply_diff(const DiffSpec& spec, const HoloFunction& f, const Point& z) {
  return apply_wco(spec.first, f, z) - apply_wco(spec.second, f, z);
}

double log_omega_weight(const ExponentField& p, const SelfMap& phi, const Point& z) {
  Vec w = phi.apply(z.vec());
  double pz = p.eval(z);
  double pw = p.eval(w);
  if (pz == pw) return 0.0;
  int n = z.dim();
  double e = (n + 1) * (pz - pw) / pw;
  return -e * std::log1p(-w.norm2());
}

double omega_weight(const ExponentField& p, const SelfMap& phi, const Point& z) {
  double l = log_omega_weight(p, phi, z);
  return l > kLogMax ? INFINITY : std::exp(l);
}

double joint_distance(const SelfMap& phi, const SelfMap& psi, const Point& z) {
  return pseudo_distance(phi.apply(z), psi.apply(z));
}

const char* variant_name(PullbackVariant v) {
  switch (v) {
    case PullbackVariant::Plain: return "plain";
    case PullbackVariant::PlainPlus: return "plain_plus";
    case PullbackVariant::Dist: return "dist";
    case PullbackVariant::DistPlus: return "dist_plus";
    case PullbackVariant::Lambda: return "lambda";
    case PullbackVariant::LambdaPlus: return "lambda_plus";
  }
  return "?";
}

PullbackVariant parse_variant(const std::string& name) {
  for (auto v : {PullbackVariant::Plain, PullbackVariant::PlainPlus, PullbackVariant::Dist, PullbackVariant::DistPlus,
                 PullbackVariant::Lambda, PullbackVariant::LambdaPlus})
    if (name == variant_name(v)) return v;
  throw ArgumentError("unknown pull-back variant '" + name + "'");
}

namespace {

QuadMeasure pullback_impl(const ExponentField& p, const WcoSpec& own, const WcoSpec* other, double alpha,
                          PullbackVariant variant, const QuadMeasure& base) {
  validate(own);
  int n = base.dim();
  if (own.phi.dim() != n || p.dim() != n) throw ArgumentError("pull-back: dimension mismatch");
  if (base.provenance().kind != MeasureKind::Lebesgue)
    throw ArgumentError("pull-back needs a lebesgue base quadrature");
  bool needs_pair = variant != PullbackVariant::Plain && variant != PullbackVariant::PlainPlus;
  if (needs_pair && other == nullptr) throw ArgumentError(std::string("variant ") + variant_name(variant) + " needs a difference");
  bool lambda = variant == PullbackVariant::Lambda || variant == PullbackVariant::LambdaPlus;
  bool plus = variant == PullbackVariant::PlainPlus || variant == PullbackVariant::DistPlus ||
              variant == PullbackVariant::LambdaPlus;

  std::size_t count = base.size();
  std::vector<double> re(count * n), im(count * n), w(count, 0.0);
  for (std::size_t k = 0; k < count; ++k) {
    Point z(base.node(k));
    Vec img = own.phi.apply(z.vec());
    for (int i = 0; i < n; ++i) {
      re[k * n + i] = img[i].real();
      im[k * n + i] = img[i].imag();
    }
    double bw = base.weights()[k];
    if (bw == 0.0) continue;
    double pz = p.eval(z);
    double lw = lambda ? log_abs(own.u.eval(z) - other->u.eval(z)) : log_abs(own.u.eval(z));
    if (lw == -INFINITY) continue;
    double lo = log_omega_weight(p, own.phi, z);
    double body = pz * lw;  // log of |u|^p or |u-v|^p
    double extra = 0.0;     // log of the factor multiplying omega
    if (needs_pair) {
      double d = joint_distance(own.phi, other->phi, z);
      if (lambda) {
        if (d > 0.0) body += alpha * std::log1p(-d);
      } else {
        if (d == 0.0) extra = -INFINITY;
        else extra = pz * std::log(d);
      }
    }
    double val;
    if (extra == -INFINITY) val = plus ? safe_exp(body) : 0.0;
    else val = safe_exp(body + extra + lo) + (plus ? safe_exp(body) : 0.0);
    w[k] = val == 0.0 ? 0.0 : bw * val;
  }
  Provenance prov;
  prov.kind = MeasureKind::Pullback;
  prov.descriptor = std::string(variant_name(variant)) + " pull-back of " + base.provenance().descriptor + " by " +
                    own.phi.describe() + " with weight " + own.u.describe();
  prov.radial = base.provenance().radial;
  prov.angular = base.provenance().angular;
  prov.rho_max = base.provenance().rho_max;
  QuadMeasure out(n, std::move(re), std::move(im), std::move(w), prov);
  if (own.phi.is_identity() && !base.ring_offsets().empty()) out.set_ring_offsets(base.ring_offsets());
  return out;
}

}  // namespace

QuadMeasure pullback_measure(const ExponentField& p, const WcoSpec& spec, PullbackVariant variant,
                             const QuadMeasure& base) {
  return pullback_impl(p, spec, nullptr, 0.0, variant, base);
}

QuadMeasure pullback_measure(const ExponentField& p, const DiffSpec& spec, PullbackVariant variant,
                             const QuadMeasure& base, bool swap) {
  const WcoSpec& own = swap ? spec.second : spec.first;
  const WcoSpec& other = swap ? spec.first : spec.second;
  return pullback_impl(p, own, &other, spec.alpha, variant, base);
}

}  // namespace varberg

#include "varberg/norm.hpp"

#include <cmath>

#include "varberg/simd.hpp"

namespace varberg {

namespace {

constexpr int kMaxBracket = 200;
constexpr double kModularTol = 1e-10;
constexpr double kBracketTol = 1e-12;

}  // namespace

ModularProfile::ModularProfile(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu) {
  if (f.dim() != mu.dim() || p.dim() != mu.dim()) throw ArgumentError("modular: dimension mismatch");
  std::size_t n = mu.size();
  logabs_.resize(n);
  p_.resize(n);
  w_ = mu.weights();
  for (std::size_t k = 0; k < n; ++k) {
    Vec z = mu.node(k);
    double m = std::abs(f.eval(z));
    logabs_[k] = m == 0.0 ? -INFINITY : std::log(m);
    p_[k] = p.eval(z);
  }
  scan();
}

ModularProfile::ModularProfile(std::vector<double> logabs, std::vector<double> p, std::vector<double> w)
    : logabs_(std::move(logabs)), p_(std::move(p)), w_(std::move(w)) {
  if (logabs_.size() != p_.size() || p_.size() != w_.size()) throw ArgumentError("ModularProfile: size mismatch");
  scan();
}

void ModularProfile::scan() {
  divergent_node_ = w_.size();
  zero_ = true;
  for (std::size_t k = 0; k < w_.size(); ++k) {
    if (std::isnan(logabs_[k])) throw NumericalError("modular: integrand is NaN at node " + std::to_string(k));
    bool live = logabs_[k] > -INFINITY && w_[k] > 0.0;
    if (live) zero_ = false;
    if (live && (std::isinf(w_[k]) || logabs_[k] == INFINITY) && divergent_node_ == w_.size()) divergent_node_ = k;
  }
}

double ModularProfile::at_scale(double gamma) const {
  if (divergent()) return INFINITY;
  return simd::exp_weighted_sum(logabs_.data(), p_.data(), w_.data(), std::log(gamma), w_.size());
}

ModularResult modular(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu) {
  ModularProfile prof(f, p, mu);
  ModularResult r;
  r.value = prof.modular();
  if (prof.divergent()) {
    r.overflow = true;
    r.offending_node = prof.divergent_node();
  } else if (std::isinf(r.value)) {
    r.overflow = true;
    r.offending_node = mu.size();
  }
  return r;
}

NormResult luxemburg_norm(const ModularProfile& prof) {
  NormResult out;
  if (prof.zero()) return out;
  if (prof.divergent()) {
    out.value = INFINITY;
    out.modular_at_value = INFINITY;
    out.divergent = true;
    return out;
  }
  double rho0 = prof.modular();
  double g0 = std::isfinite(rho0) ? std::max(1.0, rho0) : 1.0;
  double lo, hi, rlo, rhi;
  double g = g0, r = prof.at_scale(g);
  if (r == 1.0) {
    out.value = g;
    out.modular_at_value = r;
    return out;
  }
  // exponential search: the bracket width doubles in log2 scale each step
  double step = 1.0;
  if (r > 1.0) {
    lo = g;
    rlo = r;
    while (true) {
      if (++out.bracket_steps > kMaxBracket) throw NumericalError("luxemburg_norm: no upper bracket");
      g = lo * std::exp2(step);
      if (!std::isfinite(g)) throw NumericalError("luxemburg_norm: norm exceeds the double range");
      r = prof.at_scale(g);
      if (r <= 1.0) break;
      lo = g;
      rlo = r;
      step *= 2.0;
    }
    hi = g;
    rhi = r;
  } else {
    hi = g;
    rhi = r;
    while (true) {
      if (++out.bracket_steps > kMaxBracket) throw NumericalError("luxemburg_norm: no lower bracket");
      g = hi * std::exp2(-step);
      if (g == 0.0) throw NumericalError("luxemburg_norm: norm is below the double range");
      r = prof.at_scale(g);
      if (r > 1.0) break;
      hi = g;
      rhi = r;
      step *= 2.0;
    }
    lo = g;
    rlo = r;
  }
  (void)rlo;
  if (rhi == 1.0) {
    out.value = hi;
    out.modular_at_value = rhi;
    return out;
  }
  double best = hi, rbest = rhi;
  while (true) {
    double mid = hi > 2.0 * lo ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
    double rm = prof.at_scale(mid);
    ++out.bisections;
    if (std::abs(rm - 1.0) < std::abs(rbest - 1.0)) {
      best = mid;
      rbest = rm;
    }
    if (std::abs(rm - 1.0) < kModularTol) break;
    if (rm > 1.0) lo = mid;
    else hi = mid;
    if ((hi - lo) <= kBracketTol * hi || out.bisections > 200) break;
  }
  out.value = best;
  out.modular_at_value = rbest;
  return out;
}

NormResult luxemburg_norm(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu) {
  return luxemburg_norm(ModularProfile(f, p, mu));
}

}  // namespace varberg

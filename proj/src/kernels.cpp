#include "varberg/kernels.hpp"

#include <cmath>

#include "varberg/simd.hpp"

namespace varberg {

cplx kernel(const Point& z, const Point& w) {
  cplx q = 1.0 - inner(w, z);
  return std::exp(-static_cast<double>(z.dim() + 1) * std::log(q));
}

HoloFunction kernel_function(const Point& z, double N) { return HoloFunction::kernel_power(z, N); }

void validate(const KernelSpec& spec) {
  int n = spec.a.dim();
  if (n < 1) throw ArgumentError("kernel spec needs a pole");
  if (!(spec.N >= n + 1)) throw ArgumentError("kernel spec needs N >= n + 1");
  if (!(spec.beta >= 0.0)) throw ArgumentError("kernel spec needs beta >= 0");
}

HoloFunction test_function(const KernelSpec& spec, const ExponentField& p) {
  validate(spec);
  const Point& a = spec.a;
  int n = a.dim();
  double log_defect = std::log1p(-a.norm2());
  double expo = 0.0;
  if (spec.family == TestFamily::F) {
    expo = spec.N + spec.beta - (n + 1) / p.eval(a);
  } else {
    ExponentField pc = p.conjugate();
    expo = spec.N - (n + 1) / pc.eval(a);
  }
  double pref = std::exp(expo * log_defect);
  HoloFunction f = HoloFunction::kernel_power(a, spec.N + spec.beta).scale(pref);
  if (spec.family == TestFamily::G && spec.beta != 0.0) f = f * HoloFunction::boundary_factor(n, spec.beta);
  return f;
}

KernelIntegrator::KernelIntegrator(const HoloFunction& g, const QuadMeasure& mu, double power) {
  if (g.dim() != mu.dim()) throw ArgumentError("kernel integral: dimension mismatch");
  power_ = power;
  std::vector<cplx> vals(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    double w = mu.weights()[k];
    if (w == 0.0) continue;
    cplx v = g.eval(mu.node(k));
    if (v == 0.0) continue;
    vals[k] = v * w;
  }
  init(mu, std::move(vals));
}

KernelIntegrator::KernelIntegrator(const QuadMeasure& mu, std::vector<cplx> weighted_values, double power) {
  if (weighted_values.size() != mu.size()) throw ArgumentError("kernel integral: value count mismatch");
  power_ = power;
  init(mu, std::move(weighted_values));
}

void KernelIntegrator::init(const QuadMeasure& mu, std::vector<cplx> vals) {
  if (!(power_ > 0.0)) throw ArgumentError("kernel integral: power must be positive");
  n_ = mu.dim();
  integer_power_ = power_ == std::floor(power_) && power_ <= 64.0;
  re_ = mu.re();
  im_ = mu.im();
  gre_.resize(vals.size());
  gim_.resize(vals.size());
  for (std::size_t k = 0; k < vals.size(); ++k) {
    gre_[k] = vals[k].real();
    gim_[k] = vals[k].imag();
    if (!std::isfinite(gre_[k]) || !std::isfinite(gim_[k])) overflow_ = true;
  }
}

cplx KernelIntegrator::at(const Point& z, bool absolute) const {
  if (z.dim() != n_) throw ArgumentError("kernel integral: evaluation point dimension mismatch");
  if (overflow_) return {INFINITY, 0.0};
  std::size_t count = gre_.size();
  if (n_ == 1 && integer_power_) {
    simd::Complex2 s = simd::kernel_sum(z[0].real(), z[0].imag(), re_.data(), im_.data(), gre_.data(), gim_.data(),
                                        count, static_cast<int>(power_), absolute);
    return {s.re, s.im};
  }
  double lr[4] = {0, 0, 0, 0}, li[4] = {0, 0, 0, 0};
  for (std::size_t k = 0; k < count; ++k) {
    if (gre_[k] == 0.0 && gim_[k] == 0.0) continue;
    cplx dot = 0.0;  // <z, w_k>
    for (int i = 0; i < n_; ++i) dot += z[i] * cplx(re_[k * n_ + i], -im_[k * n_ + i]);
    cplx q = 1.0 - dot;
    cplx t;
    if (absolute) t = cplx(gre_[k], gim_[k]) * std::exp(-power_ * std::log(std::abs(q)));
    else t = cplx(gre_[k], gim_[k]) * std::exp(-power_ * std::log(q));
    lr[k & 3] += t.real();
    li[k & 3] += t.imag();
  }
  return {(lr[0] + lr[1]) + (lr[2] + lr[3]), (li[0] + li[1]) + (li[2] + li[3])};
}

cplx bergman_project(const HoloFunction& g, const QuadMeasure& mu, const Point& z, bool absolute) {
  KernelIntegrator ki(g, mu, static_cast<double>(mu.dim() + 1));
  return ki.at(z, absolute);
}

}  // namespace varberg

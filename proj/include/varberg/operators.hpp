#pragma once

#include <optional>
#include <string>
#include <vector>

#include "varberg/exponent.hpp"
#include "varberg/holo.hpp"
#include "varberg/kernels.hpp"
#include "varberg/measure.hpp"

namespace varberg {

struct ToeplitzSpec {
  QuadMeasure mu;
  double beta = 0.0;
};

struct WcoSpec {
  HoloFunction u;
  SelfMap phi;
};

struct DiffSpec {
  WcoSpec first;   // (u, phi)
  WcoSpec second;  // (v, psi)
  double alpha = 0.0;
};

// alpha defaults to (n+1) p+; an explicit alpha below that is rejected.
DiffSpec make_diff(const WcoSpec& first, const WcoSpec& second, const ExponentField& p,
                   std::optional<double> alpha = std::nullopt);

void validate(const ToeplitzSpec& spec);
void validate(const WcoSpec& spec);

// T f(z) = int f(w) (1 - <z,w>)^{-(n+1+beta)} dmu(w)
cplx apply_toeplitz(const ToeplitzSpec& spec, const HoloFunction& f, const Point& z);

// T f evaluated at many points with one pass over the nodes per point.
class ToeplitzImage {
 public:
  ToeplitzImage(const ToeplitzSpec& spec, const HoloFunction& f);
  cplx at(const Point& z) const { return ki_.at(z, false); }
  bool overflow() const { return ki_.overflow(); }

 private:
  KernelIntegrator ki_;
};

cplx apply_wco(const WcoSpec& spec, const HoloFunction& f, const Point& z);
cplx apply_diff(const DiffSpec& spec, const HoloFunction& f, const Point& z);

// omega_phi(z) = (1 - |phi(z)|^2)^{-(n+1)(p(z) - p(phi(z)))/p(phi(z))}; log form never overflows
double log_omega_weight(const ExponentField& p, const SelfMap& phi, const Point& z);
double omega_weight(const ExponentField& p, const SelfMap& phi, const Point& z);

// d(z) = d(phi(z), psi(z))
double joint_distance(const SelfMap& phi, const SelfMap& psi, const Point& z);

enum class PullbackVariant { Plain, PlainPlus, Dist, DistPlus, Lambda, LambdaPlus };
const char* variant_name(PullbackVariant v);
PullbackVariant parse_variant(const std::string& name);

// Point masses at phi(z_k) with weight w_k * integrand(z_k) over a dV quadrature.
// Plain variants use (u, phi); the others need a difference. `swap` uses (v, psi)
// in place of (u, phi).
QuadMeasure pullback_measure(const ExponentField& p, const WcoSpec& spec, PullbackVariant variant,
                             const QuadMeasure& base);
QuadMeasure pullback_measure(const ExponentField& p, const DiffSpec& spec, PullbackVariant variant,
                             const QuadMeasure& base, bool swap = false);

}  // namespace varberg

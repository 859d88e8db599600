#pragma once

#include <vector>

#include "varberg/exponent.hpp"
#include "varberg/holo.hpp"
#include "varberg/measure.hpp"

namespace varberg {

// K_z(w) = (1 - <w,z>)^{-(n+1)}
cplx kernel(const Point& z, const Point& w);

// F_{z,N}(w) = (1 - <w,z>)^{-N}
HoloFunction kernel_function(const Point& z, double N);

enum class TestFamily {
  F,  // (1-|a|^2)^{N+beta-(n+1)/p(a)} (1 - <z,a>)^{-(N+beta)}
  H,  // (1-|a|^2)^{N-(n+1)/p'(a)} (1 - <z,a>)^{-(N+beta)}
  G   // H * (1-|z|^2)^beta
};

struct KernelSpec {
  Point a;
  double N = 2.0;
  double beta = 0.0;
  TestFamily family = TestFamily::F;
};

void validate(const KernelSpec& spec);
HoloFunction test_function(const KernelSpec& spec, const ExponentField& p);

// sum_k g(w_k) weight_k (1 - <z,w_k>)^{-power}, or with |.| of the kernel.
// Node values are computed once; each evaluation point is one pass over the nodes.
class KernelIntegrator {
 public:
  KernelIntegrator(const HoloFunction& g, const QuadMeasure& mu, double power);
  // node values given directly (already multiplied by the weights)
  KernelIntegrator(const QuadMeasure& mu, std::vector<cplx> weighted_values, double power);

  cplx at(const Point& z, bool absolute = false) const;
  // the measure carried a +inf sentinel where g is nonzero
  bool overflow() const { return overflow_; }
  double power() const { return power_; }

 private:
  void init(const QuadMeasure& mu, std::vector<cplx> vals);
  int n_ = 1;
  double power_ = 2.0;
  bool overflow_ = false;
  bool integer_power_ = false;
  std::vector<double> re_, im_, gre_, gim_;
};

// P g(z) (absolute = false) or P-hat g(z) (absolute = true)
cplx bergman_project(const HoloFunction& g, const QuadMeasure& mu, const Point& z, bool absolute);

}  // namespace varberg

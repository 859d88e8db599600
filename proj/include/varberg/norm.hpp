#pragma once

#include <string>
#include <vector>

#include "varberg/exponent.hpp"
#include "varberg/holo.hpp"
#include "varberg/measure.hpp"

namespace varberg {

// log|f| and p at every node, so that rho(f / gamma) is a single exp-sum.
class ModularProfile {
 public:
  ModularProfile(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu);
  // Prebuilt values (any integrand, e.g. an operator image sampled at the nodes).
  ModularProfile(std::vector<double> logabs, std::vector<double> p, std::vector<double> w);

  // rho(f / gamma) = sum_k w_k |f_k / gamma|^{p_k}
  double at_scale(double gamma) const;
  double modular() const { return at_scale(1.0); }
  bool zero() const { return zero_; }
  // a node carrying an overflow sentinel where f is nonzero
  bool divergent() const { return divergent_node_ < w_.size(); }
  std::size_t divergent_node() const { return divergent_node_; }

 private:
  void scan();
  std::vector<double> logabs_, p_, w_;
  bool zero_ = true;
  std::size_t divergent_node_ = 0;
};

struct ModularResult {
  double value = 0.0;
  bool overflow = false;
  std::size_t offending_node = 0;
};

ModularResult modular(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu);

struct NormResult {
  double value = 0.0;
  double modular_at_value = 0.0;  // rho(f / value)
  int bracket_steps = 0;
  int bisections = 0;
  bool divergent = false;  // +inf sentinel: the norm is reported as +inf
};

NormResult luxemburg_norm(const ModularProfile& prof);
NormResult luxemburg_norm(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu);

}  // namespace varberg

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "varberg/carleson.hpp"
#include "varberg/exponent.hpp"
#include "varberg/holo.hpp"
#include "varberg/measure.hpp"

namespace varberg {

struct CheckConfig {
  int n = 1;
  std::size_t samples = 0;  // 0: the check's own default
  std::uint64_t seed = 1;
  std::optional<double> asserted_bound;  // replaces the check's default bound
  std::optional<ExponentField> p;        // default (n+3) + Re(z_1 + ... + z_n)
  // dV quadrature for checks that integrate; dimension is taken from n
  int radial = 200;
  int angular = 128;
  double rho_max = 1.0 - 1e-6;
  double kappa = 2.0;
  double grade_until = 0.999;
};

// Names accepted by run_property_check, in suite order.
const std::vector<std::string>& property_check_names();

// Throws ArgumentError on an unknown name.
PropertyReport run_property_check(const std::string& name, const CheckConfig& config = {});

// ||f|| <= rho(f) + 1 and rho(f / ||f||) = 1, ||f / ||f|| || = 1.
PropertyReport check_norm_modular_bound(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu,
                                        double tolerance = 1e-8);

// n + 3 + Re(z_1 + ... + z_n)
ExponentField example_exponent(int n);

// Random polynomial of total degree <= degree with complex normal coefficients.
HoloFunction random_polynomial(int n, int degree, Rng& rng);

}  // namespace varberg

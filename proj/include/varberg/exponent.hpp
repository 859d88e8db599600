#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "varberg/point.hpp"

namespace varberg {

enum class RadialKind { Power, Step };

// coef * g(|z|) with g(t) = t^param (Power) or [t >= param] (Step)
struct RadialTerm {
  RadialKind kind = RadialKind::Power;
  double param = 1.0;
  double coef = 1.0;
  double eval(double t) const;
};

// Variable exponent p(z) = c + Re<z, b> + sum_i coef_i g_i(|z|), optionally
// passed through q -> q/(q-1) `conj_depth` times. Sums and scalar multiples of
// these forms are again of this form, so expression trees are kept canonical.
class ExponentField {
 public:
  ExponentField() = default;

  static ExponentField constant(int n, double c);
  static ExponentField re_linear(const Vec& b);
  static ExponentField radial_power(int n, double k, double coef = 1.0);
  static ExponentField radial_step(int n, double t, double coef = 1.0);

  ExponentField operator+(const ExponentField& other) const;
  ExponentField operator*(double s) const;
  friend ExponentField operator*(double s, const ExponentField& p) { return p * s; }

  // Computes and caches (p-, p+); throws ValidationError unless 1 < p- <= p+ < inf.
  ExponentField validated() const;
  bool is_validated() const { return validated_; }

  // total on the closed ball
  double eval(const Vec& z) const;
  double eval(const Point& z) const { return eval(z.vec()); }

  double p_minus() const;
  double p_plus() const;
  // exact for affine fields, guard-banded grid bounds otherwise
  bool range_exact() const { return affine(); }

  // p' with 1/p + 1/p' = 1; requires a validated field.
  ExponentField conjugate() const;

  int dim() const { return n_; }
  bool affine() const { return radial_.empty(); }
  bool constant_valued() const { return radial_.empty() && b_.norm2() == 0.0; }
  bool has_step() const;
  int conj_depth() const { return conj_depth_; }
  double c() const { return c_; }
  const Vec& b() const { return b_; }
  const std::vector<RadialTerm>& radial() const { return radial_; }

 private:
  double base_eval(const Vec& z) const;
  void require_composable(const ExponentField& other) const;

  int n_ = 0;
  double c_ = 0.0;
  Vec b_;
  std::vector<RadialTerm> radial_;
  int conj_depth_ = 0;
  bool validated_ = false;
  double base_lo_ = 0.0, base_hi_ = 0.0;  // range before conjugation
  double lo_ = 0.0, hi_ = 0.0;
};

// max over sampled pairs (|z - w| < 1/2) of |p(z) - p(w)| log(1/|z - w|).
// The pair stream depends only on the seed, so a larger sample count sees a
// superset of pairs.
double log_holder_estimate(const ExponentField& p, std::size_t samples, std::uint64_t seed = 1);

struct LogHolderDiagnosis {
  double estimate = 0.0;           // at `samples`
  double estimate_refined = 0.0;   // at 16 * samples
  double block_median = 0.0;       // median over 16 blocks of samples/16 pairs of the block maximum
  double block_median_refined = 0.0;  // same with blocks of `samples` pairs
  double growth = 1.0;             // block_median_refined / block_median
  bool flagged = false;            // growth beyond threshold: likely not log-Holder
  double threshold = 1.2;
};
LogHolderDiagnosis diagnose_log_holder(const ExponentField& p, std::size_t samples, std::uint64_t seed = 1);

}  // namespace varberg

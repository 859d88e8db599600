#include "varberg/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "varberg/geometry.hpp"
#include "varberg/kernels.hpp"
#include "varberg/norm.hpp"
#include "varberg/random.hpp"

namespace varberg {

namespace {

// Half the draws uniform in the ball, half with 1 - |z| log-uniform in [1e-6, 1].
Point sample_point(int n, Rng& rng) {
  Vec d = rng.sphere_point(n);
  double rad = rng.uniform() < 0.5 ? std::pow(rng.uniform(), 1.0 / (2.0 * n)) * (1.0 - 1e-12)
                                   : 1.0 - std::pow(10.0, -6.0 * rng.uniform());
  return Point(rad * d);
}

Point point_at(const Vec& dir, double rad) { return Point(rad * dir); }

std::size_t count_or(const CheckConfig& c, std::size_t fallback) { return c.samples ? c.samples : fallback; }

ExponentField exponent_of(const CheckConfig& c) {
  ExponentField p = c.p ? *c.p : example_exponent(c.n);
  if (p.dim() != c.n) throw ArgumentError("property check: exponent dimension differs from n");
  return p.is_validated() ? p : p.validated();
}

QuadMeasure measure_of(const CheckConfig& c) {
  LebesgueSpec spec;
  spec.n = c.n;
  spec.radial = c.radial;
  spec.angular = c.angular;
  spec.rho_max = c.rho_max;
  spec.kappa = c.n == 1 ? c.kappa : 0.0;
  spec.grade_until = c.grade_until;
  spec.seed = c.seed;
  return lebesgue(spec);
}

PropertyReport base_report(const std::string& name, std::size_t samples, double observed,
                           std::optional<double> bound) {
  PropertyReport r;
  r.name = name;
  r.samples = samples;
  r.observed_bound = observed;
  r.asserted_bound = bound;
  r.pass = bound ? observed <= *bound : std::isfinite(observed);
  return r;
}

double bound_or(const CheckConfig& c, double fallback) { return c.asserted_bound.value_or(fallback); }

HoloFunction normalized(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu) {
  NormResult nr = luxemburg_norm(f, p, mu);
  if (nr.divergent || !(nr.value > 0.0)) throw NumericalError("property check: cannot normalize test function");
  return f.scale(1.0 / nr.value);
}

// Shell-stable constants: finite, and no shell above divergence_factor x the first.
void attach_shells(PropertyReport& r, const std::vector<double>& mod, const std::vector<double>& val) {
  Thresholds th;
  ShellSummary s = summarize_shells(mod, val, th);
  r.shell_profile = s.shells;
  r.divergence_flag = s.divergence;
  r.metrics["last_over_first"] = s.first > 0.0 ? s.last / s.first : 0.0;
}

PropertyReport mobius_identity(const CheckConfig& c) {
  Rng rng(c.seed);
  std::size_t m = count_or(c, 10000);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Point z = sample_point(c.n, rng), w = sample_point(c.n, rng);
    double d = pseudo_distance(z, w);
    double lhs = (1.0 - d * d) * std::norm(1.0 - inner(z, w));
    worst = std::max(worst, std::abs(lhs - z.defect() * w.defect()));
  }
  PropertyReport r = base_report("mobius_identity", m, worst, bound_or(c, 1e-10));
  r.notes = "max |(1-d^2)|1-<z,w>|^2 - (1-|z|^2)(1-|w|^2)| over random pairs";
  return r;
}

PropertyReport involutivity(const CheckConfig& c) {
  Rng rng(c.seed);
  std::size_t m = count_or(c, 10000);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    // volume-uniform: the round trip loses about eps / (1 - |z|) near the sphere
    Point z(rng.ball_vec(c.n, 1.0 - 1e-12)), w(rng.ball_vec(c.n, 1.0 - 1e-12));
    Point back = involution(z, involution(z, w));
    worst = std::max(worst, (back.vec() - w.vec()).norm());
  }
  PropertyReport r = base_report("involutivity", m, worst, bound_or(c, 1e-10));
  r.notes = "max |sigma_z(sigma_z(w)) - w| over volume-uniform pairs";
  return r;
}

PropertyReport unitary_invariance(const CheckConfig& c) {
  Rng rng(c.seed);
  std::size_t m = count_or(c, 10000);
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Unitary u = random_unitary(c.n, rng);
    Point z = sample_point(c.n, rng), w = sample_point(c.n, rng);
    worst = std::max(worst, std::abs(pseudo_distance(u.apply(z), u.apply(w)) - pseudo_distance(z, w)));
  }
  PropertyReport r = base_report("unitary_invariance", m, worst, bound_or(c, 1e-10));
  r.notes = "max |d(Uz, Uw) - d(z, w)| over random unitaries";
  return r;
}

PropertyReport volume_band(const CheckConfig& c) {
  Rng rng(c.seed);
  std::size_t m = count_or(c, c.n == 1 ? 1000 : 100);
  double worst = 0.0, lo = INFINITY, hi = 0.0, qerr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Point z = sample_point(c.n, rng);
    double s = rng.uniform(0.05, 0.95);
    VolumeEstimate v = ball_volume(z, s);
    double scale = std::exp((c.n + 1) * std::log1p(-z.norm2()));
    double ratio = v.value / scale;
    double closed = std::pow(s, 2 * c.n) / std::pow(1.0 - s * s * z.norm2(), c.n + 1);
    worst = std::max(worst, std::abs(ratio - closed) / closed);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    qerr = std::max(qerr, v.error / v.value);
  }
  PropertyReport r = base_report("volume_band", m, worst, bound_or(c, 1e-6));
  r.metrics["ratio_min"] = lo;
  r.metrics["ratio_max"] = hi;
  r.metrics["reported_relative_error_max"] = qerr;
  r.notes = "relative deviation of V(E(z,s)) / (1-|z|^2)^{n+1} from s^{2n} / (1 - s^2|z|^2)^{n+1}";
  return r;
}

PropertyReport volume_count(const CheckConfig& c) {
  if (c.n != 1) throw ArgumentError("volume_count is defined for n = 1");
  LebesgueSpec spec;
  spec.radial = 4096;
  spec.angular = 8192;
  PolarGrid grid = PolarGrid::make(spec);
  Rng rng(c.seed);
  std::size_t m = count_or(c, 1000);
  double worst = 0.0, exact = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Point z(rng.ball_vec(1, 0.9));
    double s = rng.uniform(0.3, 0.9);
    double a2 = z.norm2();
    double closed = s * s * (1.0 - a2) * (1.0 - a2) / ((1.0 - s * s * a2) * (1.0 - s * s * a2));
    exact = std::max(exact, std::abs(ball_volume(z, s).value - closed) / closed);
    worst = std::max(worst, std::abs(grid.ball_mass(z[0], s) - closed) / closed);
  }
  double bound = bound_or(c, 1e-3);
  PropertyReport r = base_report("volume_count", m, worst, bound);
  r.metrics["closed_form_residual"] = exact;
  r.metrics["grid_nodes"] = static_cast<double>(grid.size());
  r.pass = worst <= bound && exact <= 1e-12;
  r.notes = "node counting on a 4096x8192 polar dV rule vs the closed form, |z| <= 0.9, s in [0.3, 0.9]";
  return r;
}

PropertyReport comparability(const CheckConfig& c) {
  Rng rng(c.seed);
  std::size_t m = count_or(c, 10000);
  const double s = 0.7;
  double worst = 0.0;
  double per[3] = {0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    Point z = sample_point(c.n, rng);
    Point w = involution(z, Point(rng.ball_vec(c.n, s)));
    Point a = sample_point(c.n, rng);
    double r[3] = {z.defect() / w.defect(), z.defect() / std::abs(1.0 - inner(z, w)),
                   std::abs(1.0 - inner(z, a)) / std::abs(1.0 - inner(w, a))};
    for (int k = 0; k < 3; ++k) {
      double cst = std::max(r[k], 1.0 / r[k]);
      per[k] = std::max(per[k], cst);
      worst = std::max(worst, cst);
    }
  }
  double analytic = std::pow((1.0 + s) / (1.0 - s), 2);
  PropertyReport r = base_report("comparability", m, worst, bound_or(c, 1.05 * analytic));
  r.metrics["defect_ratio"] = per[0];
  r.metrics["kernel_ratio"] = per[1];
  r.metrics["third_point_ratio"] = per[2];
  r.metrics["s"] = s;
  r.notes = "w in E(z, 0.7); bound ((1+s)/(1-s))^2 with margin 1.05";
  return r;
}

PropertyReport exponent_stability(const CheckConfig& c) {
  ExponentField p = exponent_of(c);
  Rng rng(c.seed);
  std::size_t m = count_or(c, 10000);
  const double s = s_from_r(1.0);
  std::vector<double> mod, val;
  double worst = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Point a = point_at(rng.sphere_point(c.n), 1.0 - std::pow(10.0, -3.0 * rng.uniform()));
    Point z = involution(a, Point(rng.ball_vec(c.n, s)));
    Point w = involution(a, Point(rng.ball_vec(c.n, s)));
    double v = std::exp(std::abs((p.eval(z) - p.eval(w)) * std::log1p(-a.norm2())));
    worst = std::max(worst, v);
    mod.push_back(a.norm());
    val.push_back(v);
  }
  std::optional<double> bound = c.asserted_bound;
  if (!bound && p.affine() && p.conj_depth() == 0)
    bound = 1.05 * std::exp(2.0 * p.b().norm() * s / ((1.0 - s * s) * std::exp(1.0)));
  PropertyReport r = base_report("exponent_stability", m, worst, bound);
  attach_shells(r, mod, val);
  r.notes = "C = max (1-|a|^2)^{+-(p(z)-p(w))}, |a| <= 0.999, z, w in B(a, 1)";
  return r;
}

PropertyReport jensen(const CheckConfig& c) {
  ExponentField p = exponent_of(c);
  QuadMeasure mu = measure_of(c);
  Rng rng(c.seed);
  const double s = s_from_r(1.0);
  std::vector<HoloFunction> polys;
  for (int i = 0; i < 3; ++i) polys.push_back(normalized(random_polynomial(c.n, 3, rng), p, mu));
  std::vector<double> mod, val;
  const double radii[] = {0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99};
  std::size_t cases = 0;
  for (double rad : radii) {
    Point a = point_at(rng.sphere_point(c.n), rad);
    std::vector<HoloFunction> fs = polys;
    fs.push_back(normalized(test_function(KernelSpec{a, c.n + 1.0, 0.0, TestFamily::F}, p), p, mu));
    LocalNodes ln = ball_nodes(a, s, 16, 32, &rng);
    double vol = ln.volume();
    std::vector<double> pk(ln.nodes.size());
    for (std::size_t k = 0; k < pk.size(); ++k) pk[k] = p.eval(ln.nodes[k]);
    for (const HoloFunction& f : fs) {
      double avg1 = 0.0, avgp = 0.0;
      for (std::size_t k = 0; k < ln.nodes.size(); ++k) {
        double v = std::abs(f.eval(ln.nodes[k]));
        avg1 += ln.weights[k] * v;
        avgp += ln.weights[k] * std::pow(v, pk[k]);
      }
      avg1 /= vol;
      avgp /= vol;
      double lhs = 0.0;
      for (double q : pk) lhs = std::max(lhs, std::pow(avg1, q));
      mod.push_back(rad);
      val.push_back(lhs / (avgp + 1.0));
      ++cases;
    }
  }
  double worst = *std::max_element(val.begin(), val.end());
  PropertyReport r = base_report("jensen", cases, worst, c.asserted_bound);
  attach_shells(r, mod, val);
  r.pass = r.pass && !r.divergence_flag;
  r.notes = "K = max_z (avg_B |f|)^{p(z)} / (avg_B |f|^p + 1), ||f|| = 1, r = 1, |a| in [0, 0.99]";
  return r;
}

PropertyReport pointwise(const CheckConfig& c) {
  ExponentField p = exponent_of(c);
  QuadMeasure mu = measure_of(c);
  Rng rng(c.seed);
  std::vector<HoloFunction> fs;
  std::vector<Point> poles;
  for (int i = 0; i < 4; ++i) fs.push_back(normalized(random_polynomial(c.n, 4, rng), p, mu));
  for (double rad : {0.5, 0.9, 0.99}) {
    Point a = point_at(rng.sphere_point(c.n), rad);
    poles.push_back(a);
    fs.push_back(normalized(test_function(KernelSpec{a, c.n + 1.0, 0.0, TestFamily::F}, p), p, mu));
  }
  std::vector<Point> pts;
  for (const Point& z : boundary_sample_grid(c.n, 64, c.seed))
    if (z.norm() <= 0.995) pts.push_back(z);
  pts.insert(pts.end(), poles.begin(), poles.end());
  std::vector<double> mod, val;
  for (const Point& z : pts) {
    double weight = std::exp((c.n + 1) / p.eval(z) * std::log1p(-z.norm2()));
    double best = 0.0;
    for (const HoloFunction& f : fs) best = std::max(best, std::abs(f.eval(z)) * weight);
    mod.push_back(z.norm());
    val.push_back(best);
  }
  double worst = *std::max_element(val.begin(), val.end());
  PropertyReport r = base_report("pointwise", pts.size() * fs.size(), worst, c.asserted_bound);
  attach_shells(r, mod, val);
  r.pass = r.pass && !r.divergence_flag;
  r.notes = "max |f(z)| (1-|z|^2)^{(n+1)/p(z)} over ||f|| = 1 polynomials and kernel test functions, |z| <= 0.995";
  return r;
}

PropertyReport anisotropic(const CheckConfig& c) {
  Rng rng(c.seed);
  std::size_t m = count_or(c, 10000);
  const double s = s_from_r(1.0);
  double lo = INFINITY, hi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Point a = point_at(rng.sphere_point(c.n), 1.0 - 0.1 * std::pow(10.0, -3.0 * rng.uniform()));
    BoundaryFrame frame = boundary_frame(a);
    Point z = involution(a, Point(rng.ball_vec(c.n, s)));
    Point w = involution(a, Point(rng.ball_vec(c.n, s)));
    double d = pseudo_distance(z, w);
    if (d == 0.0) continue;
    double q = anisotropic_distance(frame, z, w) / d;
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  double cst = std::max(hi, 1.0 / lo);
  PropertyReport r = base_report("anisotropic", m, cst, c.asserted_bound);
  r.metrics["ratio_min"] = lo;
  r.metrics["ratio_max"] = hi;
  r.notes = "comparability constant of the frame quantity vs d(z,w), |a| >= 0.9, z, w in B(a,1); no threshold t0 asserted";
  return r;
}

PropertyReport oscillation(const CheckConfig& c) {
  Rng rng(c.seed);
  const double s1 = 0.3, s2 = 0.6;
  std::vector<double> exps = {2.0, 3.5};
  if (c.p && c.p->constant_valued()) exps = {c.p->c()};
  std::vector<HoloFunction> polys;
  for (int i = 0; i < 4; ++i) polys.push_back(random_polynomial(c.n, 4, rng));
  std::vector<double> mod, val;
  for (int j = 0; j <= 8; ++j) {
    double rad = j == 0 ? 0.0 : 1.0 - std::ldexp(1.0, -j);
    for (int t = 0; t < 8; ++t) {
      Point z = point_at(rng.sphere_point(c.n), rad);
      LocalNodes ln = ball_nodes(z, s2, 12, 24, &rng);
      double vol = ln.volume();
      std::vector<Point> ws;
      for (int k = 0; k < 4; ++k) ws.push_back(involution(z, Point(rng.ball_vec(c.n, s1))));
      for (const HoloFunction& f : polys) {
        std::vector<double> mag(ln.nodes.size());
        for (std::size_t k = 0; k < mag.size(); ++k) mag[k] = std::abs(f.eval(ln.nodes[k]));
        cplx fz = f.eval(z);
        for (double q : exps) {
          double avg = 0.0;
          for (std::size_t k = 0; k < mag.size(); ++k) avg += ln.weights[k] * std::pow(mag[k], q);
          avg /= vol;
          for (const Point& w : ws) {
            double d = pseudo_distance(z, w);
            if (d == 0.0 || avg == 0.0) continue;
            mod.push_back(rad);
            val.push_back(std::pow(std::abs(fz - f.eval(w)) / d, q) / avg);
          }
        }
      }
    }
  }
  double worst = *std::max_element(val.begin(), val.end());
  PropertyReport r = base_report("oscillation", val.size(), worst, c.asserted_bound);
  attach_shells(r, mod, val);
  r.pass = r.pass && !r.divergence_flag;
  r.notes = "K = |f(z)-f(w)|^p / (d(z,w)^p avg_{E(z,0.6)} |f|^p), w in E(z, 0.3), p in {2, 3.5}";
  return r;
}

PropertyReport norm_estimate(const CheckConfig& c) {
  ExponentField p = exponent_of(c);
  QuadMeasure mu = measure_of(c);
  const double N = c.n + 1.0;
  Vec e1(c.n);
  e1[0] = 1.0;
  double lo = INFINITY, hi = 0.0;
  PropertyReport r;
  for (double rad : {0.0, 0.5, 0.9, 0.99}) {
    Point z = point_at(e1, rad);
    NormResult nr = luxemburg_norm(kernel_function(z, N), p, mu);
    double prod = nr.value * std::exp((N - (c.n + 1) / p.eval(z)) * std::log1p(-z.norm2()));
    std::ostringstream key;
    key << "product_at_" << rad;
    r.metrics[key.str()] = prod;
    lo = std::min(lo, prod);
    hi = std::max(hi, prod);
  }
  PropertyReport out = base_report("norm_estimate", 4, hi / lo, bound_or(c, 10.0));
  out.metrics = r.metrics;
  out.notes = "max/min of ||F_{z,N}|| (1-|z|^2)^{N-(n+1)/p(z)}, N = n+1, |z| in {0, 0.5, 0.9, 0.99}";
  return out;
}

PropertyReport norm_modular(const CheckConfig& c) {
  // polynomial integrands: no boundary grading needed
  CheckConfig flat = c;
  flat.kappa = 0.0;
  QuadMeasure mu = measure_of(flat);
  Rng rng(c.seed);
  std::size_t m = count_or(c, 20);
  double tol = bound_or(c, 1e-8);
  double worst = 0.0, margin = INFINITY;
  bool ok = true;
  for (std::size_t i = 0; i < m; ++i) {
    double cc = rng.uniform(1.5, 5.0);
    double bn = rng.uniform() * std::min(1.0, cc - 1.2);
    ExponentField p = (ExponentField::constant(c.n, cc) + ExponentField::re_linear(bn * rng.sphere_point(c.n))).validated();
    HoloFunction f = random_polynomial(c.n, 4, rng).scale(std::exp(rng.uniform(-3.0, 3.0)));
    PropertyReport one = check_norm_modular_bound(f, p, mu, tol);
    ok = ok && one.pass;
    worst = std::max(worst, one.observed_bound);
    margin = std::min(margin, one.metrics["inequality_margin"]);
  }
  PropertyReport r = base_report("norm_modular", m, worst, tol);
  r.pass = ok;
  r.metrics["min_inequality_margin"] = margin;
  r.notes = "rho(f/||f||) = 1, ||f/||f|| || = 1 and ||f|| <= rho(f) + 1 on random polynomial / affine exponent pairs";
  return r;
}

PropertyReport log_holder(const CheckConfig& c) {
  ExponentField p = exponent_of(c);
  std::size_t m = count_or(c, 2000);
  LogHolderDiagnosis dg = diagnose_log_holder(p, m, c.seed);
  PropertyReport r = base_report("log_holder", m, dg.estimate, c.asserted_bound);
  r.pass = r.pass && !dg.flagged;
  r.metrics["estimate_refined"] = dg.estimate_refined;
  r.metrics["block_median"] = dg.block_median;
  r.metrics["block_median_refined"] = dg.block_median_refined;
  r.metrics["growth"] = dg.growth;
  r.metrics["threshold"] = dg.threshold;
  r.notes = "C_log estimate at N and 16N samples; flagged when the median block maximum grows past the threshold from N/16 to N pairs per block";
  return r;
}

using CheckFn = std::function<PropertyReport(const CheckConfig&)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> r = {
      {"mobius_identity", mobius_identity}, {"involutivity", involutivity},
      {"unitary_invariance", unitary_invariance}, {"volume_band", volume_band},
      {"volume_count", volume_count}, {"comparability", comparability},
      {"exponent_stability", exponent_stability}, {"jensen", jensen},
      {"pointwise", pointwise}, {"anisotropic", anisotropic},
      {"oscillation", oscillation}, {"norm_estimate", norm_estimate},
      {"norm_modular", norm_modular}, {"log_holder", log_holder}};
  return r;
}

}  // namespace

ExponentField example_exponent(int n) {
  Vec b(n);
  for (int i = 0; i < n; ++i) b[i] = 1.0;
  return (ExponentField::constant(n, n + 3.0) + ExponentField::re_linear(b)).validated();
}

HoloFunction random_polynomial(int n, int degree, Rng& rng) {
  require_dim(n);
  HoloFunction f = HoloFunction::zero(n);
  std::vector<int> alpha(n, 0);
  std::function<void(int, int)> walk = [&](int i, int left) {
    if (i == n) {
      f = f + HoloFunction::monomial(alpha, rng.complex_normal());
      return;
    }
    for (int k = 0; k <= left; ++k) {
      alpha[i] = k;
      walk(i + 1, left - k);
    }
    alpha[i] = 0;
  };
  walk(0, degree);
  return f;
}

PropertyReport check_norm_modular_bound(const HoloFunction& f, const ExponentField& p, const QuadMeasure& mu,
                                        double tolerance) {
  NormResult nr = luxemburg_norm(f, p, mu);
  if (nr.divergent || nr.value == 0.0) throw ArgumentError("norm/modular check needs a nonzero f of finite norm");
  double rho = modular(f, p, mu).value;
  NormResult unit = luxemburg_norm(f.scale(1.0 / nr.value), p, mu);
  double consistency = std::abs(nr.modular_at_value - 1.0);
  double boundary = std::abs(unit.value - 1.0);
  PropertyReport r;
  r.name = "norm_modular_bound";
  r.samples = mu.size();
  r.observed_bound = std::max(consistency, boundary);
  r.asserted_bound = tolerance;
  r.metrics["norm"] = nr.value;
  r.metrics["modular"] = rho;
  r.metrics["modular_at_norm"] = nr.modular_at_value;
  r.metrics["unit_norm"] = unit.value;
  r.metrics["inequality_margin"] = rho + 1.0 - nr.value;
  r.pass = r.observed_bound <= tolerance && nr.value <= rho + 1.0 + tolerance;
  r.notes = "||f|| <= rho(f) + 1; rho(f/||f||) = 1; f scaled to modular 1 has norm 1";
  return r;
}

const std::vector<std::string>& property_check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, fn] : registry()) v.push_back(k);
    return v;
  }();
  return names;
}

PropertyReport run_property_check(const std::string& name, const CheckConfig& config) {
  require_dim(config.n);
  for (const auto& [k, fn] : registry())
    if (k == name) return fn(config);
  throw ArgumentError("unknown property check '" + name + "'");
}

}  // namespace varberg

#include "varberg/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "varberg/norm.hpp"
#include "varberg/random.hpp"

namespace varberg {

namespace {

double ratio_of(double a, double b) {
  if (b > 0.0) return a / b;
  return a > 0.0 ? INFINITY : 0.0;
}

void require_lattice(const QuadMeasure& mu, const Lattice& lattice) {
  if (lattice.centers.empty()) throw ArgumentError("Carleson test: empty lattice");
  if (lattice.n != mu.dim()) throw ArgumentError("Carleson test: lattice and measure dimensions differ");
}

double log_abs(cplx v) {
  double m = std::abs(v);
  return m == 0.0 ? -INFINITY : std::log(m);
}

}  // namespace

int shell_index(double modulus) {
  double gap = 1.0 - modulus;
  if (!(gap > 0.0)) throw ArgumentError("shell_index: |a| must be below 1");
  if (gap >= 1.0) return 0;
  return static_cast<int>(std::floor(std::log2(1.0 / gap)));
}

ShellSummary summarize_shells(const std::vector<double>& modulus, const std::vector<double>& value,
                              const Thresholds& th) {
  if (modulus.size() != value.size()) throw ArgumentError("shell summary: size mismatch");
  ShellSummary out;
  std::map<int, ShellEntry> shells;
  for (std::size_t k = 0; k < value.size(); ++k) {
    int j = shell_index(modulus[k]);
    double v = value[k];
    if (std::isnan(v)) throw NumericalError("shell summary: NaN value");
    if (std::isinf(v)) out.any_infinite = true;
    auto [it, fresh] = shells.try_emplace(j);
    ShellEntry& e = it->second;
    if (fresh || v > e.max_ratio) {
      e.shell = j;
      e.max_ratio = v;
      e.one_minus_a = 1.0 - modulus[k];
    }
    ++e.count;
    if (k == 0 || v > out.max_value) {
      out.max_value = v;
      out.argmax = k;
    }
  }
  for (auto& [j, e] : shells) out.shells.push_back(e);
  if (out.shells.empty()) return out;
  out.first = out.shells.front().max_ratio;
  out.last = out.shells.back().max_ratio;
  for (const auto& e : out.shells) out.peak = std::max(out.peak, e.max_ratio);
  for (auto& e : out.shells) e.flag = std::isinf(e.max_ratio) || e.max_ratio > th.divergence_factor * out.first;
  out.divergence = out.any_infinite || out.last > th.divergence_factor * out.first;
  out.decays = !out.any_infinite && out.last <= th.decay_factor * out.peak;
  return out;
}

namespace {

CarlesonReport carleson_run(const QuadMeasure& mu, double r, double beta, const Lattice& lattice,
                            const Thresholds& th, const char* mode) {
  require_lattice(mu, lattice);
  if (!(r > 0.0)) throw ArgumentError("Carleson test: r must be positive");
  if (!(beta >= 0.0)) throw ArgumentError("Carleson test: beta must be >= 0");
  int n = mu.dim();
  double s = s_from_r(r);
  double e = n + 1 + beta;
  std::vector<double> mod(lattice.centers.size()), val(lattice.centers.size());
  for (std::size_t k = 0; k < lattice.centers.size(); ++k) {
    const Point& a = lattice.centers[k];
    double mass = mu.ball_mass(a, s);
    mod[k] = a.norm();
    val[k] = mass == 0.0 ? 0.0 : mass * std::exp(-e * std::log1p(-a.norm2()));
  }
  ShellSummary sum = summarize_shells(mod, val, th);

  CarlesonReport rep;
  rep.mode = mode;
  rep.measure = mu.provenance().descriptor;
  rep.constant = sum.max_value;
  rep.argmax_center = lattice.centers[sum.argmax];
  rep.r = r;
  rep.beta = beta;
  rep.rho_max = lattice.coverage_radius;
  rep.centers = lattice.centers.size();
  rep.shell_profile = sum.shells;
  rep.sentinel = mu.has_sentinel();
  rep.divergence_flag = sum.divergence || rep.sentinel;
  rep.compact = !rep.divergence_flag && sum.decays;
  rep.last_over_first = ratio_of(sum.last, sum.first);
  rep.last_over_peak = ratio_of(sum.last, sum.peak);
  rep.thresholds = th;
  return rep;
}

}  // namespace

CarlesonReport carleson_constant(const QuadMeasure& mu, double r, double beta, const Lattice& lattice,
                                 const Thresholds& th) {
  return carleson_run(mu, r, beta, lattice, th, "bounded");
}

CarlesonReport vanishing_profile(const QuadMeasure& mu, double r, double beta, const Lattice& lattice,
                                 const Thresholds& th) {
  return carleson_run(mu, r, beta, lattice, th, "vanishing");
}

std::vector<Point> boundary_sample_grid(int n, int angular, std::uint64_t seed) {
  require_dim(n);
  if (angular < 1) throw ArgumentError("sample grid: angular count must be positive");
  std::vector<double> radii;
  for (int j = 1; j <= 19; ++j) radii.push_back(1.0 - std::ldexp(1.0, -j));
  for (int k = 1; k <= 6; ++k) radii.push_back(1.0 - std::pow(10.0, -k));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

  std::vector<Vec> dirs;
  if (n == 1) {
    for (int m = 0; m < angular; ++m) {
      double t = kTwoPi * m / angular;
      dirs.push_back(Vec{cplx(std::cos(t), std::sin(t))});
    }
  } else {
    Vec e1(n);
    e1[0] = 1.0;
    dirs.push_back(e1);
    Rng rng(seed);
    for (int m = 1; m < angular; ++m) dirs.push_back(rng.sphere_point(n));
  }
  std::vector<Point> grid{Point::origin(n)};
  for (double rad : radii)
    for (const Vec& d : dirs) grid.emplace_back(rad * d);
  return grid;
}

PropertyReport wco_symbol_sup(const HoloFunction& u, const SelfMap& phi, const ExponentField& p,
                              const std::vector<Point>& grid, SymbolMode mode, const Thresholds& th) {
  validate(WcoSpec{u, phi});
  if (grid.empty()) throw ArgumentError("wco_symbol_sup: empty sample grid");
  int n = phi.dim();
  std::vector<double> mod, val;
  double at_2 = 0.0, at_6 = 0.0;
  for (const Point& z : grid) {
    Vec w = phi.apply(z.vec());
    double lu = log_abs(u.eval(z));
    double q = 0.0;
    if (lu > -INFINITY) {
      double l = lu + (n + 1) / p.eval(z) * std::log1p(-z.norm2()) -
                 (n + 1) / p.eval(w) * std::log1p(-w.norm2());
      q = l > 709.0 ? INFINITY : std::exp(l);
    }
    double gap = 1.0 - z.norm();
    if (std::abs(gap - 1e-2) < 1e-12) at_2 = std::max(at_2, q);
    if (std::abs(gap - 1e-6) < 1e-12) at_6 = std::max(at_6, q);
    mod.push_back(mode == SymbolMode::Bounded ? z.norm() : std::min(w.norm(), 1.0 - 1e-16));
    val.push_back(q);
  }
  ShellSummary sum = summarize_shells(mod, val, th);
  PropertyReport rep;
  rep.name = mode == SymbolMode::Bounded ? "wco_symbol_sup" : "wco_symbol_vanishing";
  rep.samples = grid.size();
  rep.observed_bound = sum.max_value;
  rep.shell_profile = sum.shells;
  rep.divergence_flag = sum.divergence;
  rep.metrics["last_over_first"] = ratio_of(sum.last, sum.first);
  rep.metrics["last_over_peak"] = ratio_of(sum.last, sum.peak);
  rep.metrics["boundary_ratio_1e-6_over_1e-2"] = ratio_of(at_6, at_2);
  rep.metrics["divergence_factor"] = th.divergence_factor;
  rep.metrics["decay_factor"] = th.decay_factor;
  std::ostringstream notes;
  if (mode == SymbolMode::Bounded) {
    rep.pass = !sum.divergence;
    notes << "bounded-consistent iff no shell exceeds " << th.divergence_factor << "x the first shell";
  } else {
    rep.pass = sum.decays;
    notes << "shells by |phi(z)|; compact-consistent iff the last shell is at most " << th.decay_factor
          << "x the peak shell";
  }
  rep.notes = notes.str();
  return rep;
}

namespace {

// values of the operator image at the nodes of the norm measure
std::vector<cplx> image_at_nodes(const ProbeOperator& op, const HoloFunction& f, const QuadMeasure& nm,
                                 bool& overflow) {
  std::vector<cplx> out(nm.size());
  overflow = false;
  if (const auto* t = std::get_if<ToeplitzSpec>(&op)) {
    if (t->mu.size() == 0) return out;
    ToeplitzImage img(*t, f);
    if (img.overflow()) {
      overflow = true;
      return out;
    }
    for (std::size_t k = 0; k < nm.size(); ++k) out[k] = img.at(Point(nm.node(k)));
  } else if (const auto* w = std::get_if<WcoSpec>(&op)) {
    for (std::size_t k = 0; k < nm.size(); ++k) out[k] = apply_wco(*w, f, Point(nm.node(k)));
  } else {
    const auto& d = std::get<DiffSpec>(op);
    for (std::size_t k = 0; k < nm.size(); ++k) out[k] = apply_diff(d, f, Point(nm.node(k)));
  }
  return out;
}

const char* operator_name(const ProbeOperator& op) {
  if (std::holds_alternative<ToeplitzSpec>(op)) return "toeplitz";
  if (std::holds_alternative<WcoSpec>(op)) return "wco";
  return "diff";
}

}  // namespace

PropertyReport compactness_probe(const ProbeOperator& op, const ExponentField& p, const QuadMeasure& norm_measure,
                                 const std::vector<Point>& family, double N, const Thresholds& th) {
  if (family.empty()) throw ArgumentError("compactness_probe: empty family");
  for (std::size_t i = 1; i < family.size(); ++i)
    if (family[i].norm() < family[i - 1].norm())
      throw ArgumentError("compactness_probe: family must be ordered by increasing |a|");
  ExponentField pv = p.is_validated() ? p : p.validated();
  std::vector<double> pn(norm_measure.size());
  for (std::size_t k = 0; k < norm_measure.size(); ++k) pn[k] = pv.eval(norm_measure.node(k));

  PropertyReport rep;
  rep.name = std::string("compactness_probe:") + operator_name(op);
  rep.samples = family.size();
  std::vector<double> norms;
  bool divergent = false;
  for (std::size_t i = 0; i < family.size(); ++i) {
    HoloFunction f = test_function(KernelSpec{family[i], N, 0.0, TestFamily::F}, pv);
    bool overflow = false;
    std::vector<cplx> img = image_at_nodes(op, f, norm_measure, overflow);
    double nv;
    if (overflow) {
      nv = INFINITY;
    } else {
      std::vector<double> la(img.size());
      for (std::size_t k = 0; k < img.size(); ++k) la[k] = log_abs(img[k]);
      NormResult nr = luxemburg_norm(ModularProfile(std::move(la), pn, norm_measure.weights()));
      nv = nr.divergent ? INFINITY : nr.value;
    }
    if (std::isinf(nv)) divergent = true;
    norms.push_back(nv);
    std::ostringstream key;
    key.precision(17);
    key << "norm_at_" << family[i].norm();
    rep.metrics[key.str()] = nv;
  }
  double first = norms.front(), last = norms.back();
  rep.observed_bound = *std::max_element(norms.begin(), norms.end());
  rep.divergence_flag = divergent;
  rep.pass = !divergent && last <= th.decay_factor * first;
  rep.metrics["last_over_first"] = ratio_of(last, first);
  rep.metrics["min_norm"] = *std::min_element(norms.begin(), norms.end());
  rep.metrics["decay_factor"] = th.decay_factor;
  rep.notes = "compact-consistent iff the last norm is at most " + std::to_string(th.decay_factor) +
              "x the first; pass reports compact-consistency";
  return rep;
}

DiffDiagnostics diff_diagnostics(const DiffSpec& spec, const ExponentField& p, const QuadMeasure& base, double r,
                                 const Lattice& lattice, bool with_plus, const Thresholds& th) {
  DiffDiagnostics out;
  out.alpha = spec.alpha;
  struct Item {
    const char* name;
    PullbackVariant v;
    bool swap;
  };
  std::vector<Item> items = {{"mu_u_phi_d", PullbackVariant::Dist, false},
                             {"mu_v_psi_d", PullbackVariant::Dist, true},
                             {"lambda_phi_alpha", PullbackVariant::Lambda, false},
                             {"lambda_psi_alpha", PullbackVariant::Lambda, true}};
  if (with_plus) {
    items.push_back({"mu_u_phi_d_plus", PullbackVariant::DistPlus, false});
    items.push_back({"mu_v_psi_d_plus", PullbackVariant::DistPlus, true});
    items.push_back({"lambda_phi_alpha_plus", PullbackVariant::LambdaPlus, false});
    items.push_back({"lambda_psi_alpha_plus", PullbackVariant::LambdaPlus, true});
  }
  bool ok = true;
  for (std::size_t i = 0; i < items.size(); ++i) {
    QuadMeasure m = pullback_measure(p, spec, items[i].v, base, items[i].swap);
    CarlesonReport rep = carleson_constant(m, r, 0.0, lattice, th);
    if (i < 4) ok = ok && std::isfinite(rep.constant) && !rep.divergence_flag;
    out.names.push_back(items[i].name);
    out.zero_measure.push_back(m.all_zero());
    out.reports.push_back(std::move(rep));
  }
  out.bounded_consistent = ok;
  return out;
}

}  // namespace varberg

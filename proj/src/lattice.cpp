#include "varberg/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace varberg {

namespace {

constexpr double kGolden = 0.61803398874989484820;

// Angular count so that neighbours on the circle of Bergman radius t are at most h apart.
std::size_t ring_count(double t, double h) {
  double rho = std::tanh(t);
  double defect = 1.0 / (std::cosh(t) * std::cosh(t));
  double sin_half = defect * std::sinh(h) / (2.0 * rho);
  if (sin_half >= 1.0) return 3;
  double delta = 2.0 * std::asin(sin_half);
  return std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(kTwoPi / delta)));
}

// Accepted centers stored shell by shell in increasing angle.
struct ShellStore {
  std::vector<double> rho;  // nominal radius per shell
  std::vector<std::vector<double>> theta;
  std::vector<std::vector<cplx>> pts;
};

bool far_from_all(const ShellStore& st, cplx c, double r_half, double s_half, std::vector<Slice>& scratch) {
  Disk d = euclidean_disk(c, s_half);
  Point pc{c};
  for (std::size_t g = 0; g < st.rho.size(); ++g) {
    const auto& th = st.theta[g];
    if (th.empty()) continue;
    double rr = st.rho[g];
    scratch.clear();
    window_slices(band_window(rr * (1 - 1e-14), rr * (1 + 1e-14), d), th.data(), 0, th.size(), scratch);
    for (const Slice& sl : scratch)
      for (std::size_t i = sl.begin; i < sl.end; ++i)
        if (bergman_distance(pc, Point{st.pts[g][i]}) < r_half) return false;
  }
  return true;
}

Lattice make_lattice_1d(double r, double rho_max, const LatticeOptions& opts) {
  Lattice lat;
  lat.n = 1;
  lat.r = r;
  lat.coverage_radius = rho_max;
  const double h = opts.step_factor * r;
  const double t_max = std::atanh(rho_max);
  const double r_half = 0.5 * r;
  // the prefilter disk is slightly larger than E(c, tanh(r/2)) so no close center is missed
  const double s_half = std::tanh(r_half * (1.0 + 1e-6));

  std::vector<double> shells{0.0};
  for (int k = 1; k * h < t_max - 1e-3 * h; ++k) shells.push_back(k * h);
  shells.push_back(t_max);

  double probe_t = opts.overlap_probe_radius ? *opts.overlap_probe_radius : r;
  lat.overlap_probe_radius = probe_t;

  ShellStore st;
  std::vector<cplx> probes;
  std::vector<Slice> scratch;
  lat.shell_offsets.push_back(0);
  for (std::size_t k = 0; k < shells.size(); ++k) {
    double t = shells[k];
    double rho = std::tanh(t);
    st.rho.push_back(rho);
    st.theta.emplace_back();
    st.pts.emplace_back();
    std::size_t m = k == 0 ? 1 : ring_count(t, h);
    double step = kTwoPi / static_cast<double>(m);
    double frac = std::fmod(static_cast<double>(k) * kGolden, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
      double th = (static_cast<double>(j) + frac) * step;
      cplx c = k == 0 ? cplx(0.0, 0.0) : std::polar(rho, th);
      ++lat.candidates;
      if (t <= probe_t) probes.push_back(c);
      if (!far_from_all(st, c, r_half, s_half, scratch)) continue;
      st.theta.back().push_back(k == 0 ? 0.0 : th);
      st.pts.back().push_back(c);
      lat.centers.push_back(Point{c});
    }
    lat.shell_offsets.push_back(lat.centers.size());
  }
  lat.build_index();

  lat.overlap_probes = probes.size();
  int bound = 0;
  for (cplx x : probes) bound = std::max(bound, lattice_multiplicity(lat, Point{x}, 4.0 * r));
  lat.overlap_bound = bound;
  return lat;
}

Lattice make_lattice_nd(int n, double r, double rho_max, const LatticeOptions& opts) {
  Lattice lat;
  lat.n = n;
  lat.r = r;
  lat.coverage_radius = rho_max;
  const double h = opts.step_factor * r;
  const double t_max = std::atanh(rho_max);
  Rng rng(opts.seed);

  std::vector<Point> cands{Point::origin(n)};
  std::vector<double> shells;
  for (int k = 1; k * h < t_max - 1e-3 * h; ++k) shells.push_back(k * h);
  shells.push_back(t_max);
  for (double t : shells) {
    // complex-hyperbolic sphere area ~ sinh^{2n-1}(t) cosh(t), cells of diameter ~ h
    double cells = std::pow(std::sinh(t) / (0.5 * h), 2 * n - 2) * (std::sinh(2.0 * t) / h);
    auto m = static_cast<std::size_t>(std::clamp(4.0 * cells, 8.0, 2e5));
    double rho = std::tanh(t);
    for (std::size_t j = 0; j < m; ++j) cands.push_back(Point(rho * rng.sphere_point(n)));
  }
  // samples of the region act as extra candidates so the audit region is covered
  for (int j = 0; j < opts.repair_samples; ++j) cands.push_back(Point(rng.ball_vec(n, rho_max)));

  double probe_t = opts.overlap_probe_radius ? *opts.overlap_probe_radius : r;
  lat.overlap_probe_radius = probe_t;
  std::vector<Point> probes;
  for (const Point& c : cands) {
    ++lat.candidates;
    if (std::atanh(c.norm()) <= probe_t) probes.push_back(c);
    bool ok = true;
    for (const Point& a : lat.centers)
      if (bergman_distance(c, a) < 0.5 * r) {
        ok = false;
        break;
      }
    if (ok) lat.centers.push_back(c);
  }
  if (probes.size() > 64) probes.resize(64);
  lat.overlap_probes = probes.size();
  int bound = 0;
  for (const Point& x : probes) bound = std::max(bound, lattice_multiplicity(lat, x, 4.0 * r));
  lat.overlap_bound = bound;
  return lat;
}

}  // namespace

void Lattice::build_index() {
  if (n != 1) return;
  std::vector<cplx> pts;
  pts.reserve(centers.size());
  for (const Point& c : centers) pts.push_back(c[0]);
  index_ = std::make_shared<const DiskIndex>(DiskIndex::from_groups(pts, {}, shell_offsets));
}

const DiskIndex& Lattice::index() const {
  if (n != 1) throw ArgumentError("lattice index is only available in dimension 1");
  if (!index_) throw ArgumentError("lattice index was not built");
  return *index_;
}

Lattice make_lattice(int n, double r, double rho_max, const LatticeOptions& opts) {
  require_dim(n);
  if (!(r > 0.0) || !std::isfinite(r)) throw ArgumentError("make_lattice: r must be positive");
  if (!(rho_max > 0.0 && rho_max < 1.0)) throw ArgumentError("make_lattice: rho_max must be in (0,1)");
  if (!(opts.step_factor > 0.0 && opts.step_factor < 0.5)) throw ArgumentError("make_lattice: step_factor must be in (0, 1/2)");
  return n == 1 ? make_lattice_1d(r, rho_max, opts) : make_lattice_nd(n, r, rho_max, opts);
}

int lattice_multiplicity(const Lattice& lat, const Point& x, double radius) {
  if (lat.n == 1) return static_cast<int>(lat.index().ball_count(x[0], std::tanh(radius)));
  int count = 0;
  for (const Point& a : lat.centers)
    if (bergman_distance(x, a) < radius) ++count;
  return count;
}

CoverageAudit audit_coverage(const Lattice& lat, std::size_t samples, std::uint64_t seed) {
  CoverageAudit out;
  out.samples = samples;
  Rng rng(seed);
  std::vector<Slice> sl;
  const double s_probe = std::tanh(lat.r * (1.0 + 1e-6));
  for (std::size_t k = 0; k < samples; ++k) {
    Point x(rng.ball_vec(lat.n, lat.coverage_radius));
    double best = INFINITY;
    if (lat.n == 1) {
      const DiskIndex& idx = lat.index();
      idx.query(x[0], s_probe, sl);
      for (const Slice& s : sl)
        for (std::size_t i = s.begin; i < s.end; ++i)
          best = std::min(best, bergman_distance(x, Point{cplx(idx.re()[i], idx.im()[i])}));
    } else {
      for (const Point& a : lat.centers) best = std::min(best, bergman_distance(x, a));
    }
    if (!(best < lat.r)) ++out.uncovered;
    if (std::isfinite(best)) out.worst_distance = std::max(out.worst_distance, best);
    else out.worst_distance = INFINITY;
  }
  return out;
}

SeparationAudit audit_separation(const Lattice& lat, double window) {
  SeparationAudit out;
  if (lat.n == 1) {
    const DiskIndex& idx = lat.index();
    std::vector<Slice> sl;
    double s = std::tanh(window);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      cplx a(idx.re()[i], idx.im()[i]);
      idx.query(a, s, sl);
      for (const Slice& x : sl)
        for (std::size_t j = x.begin; j < x.end; ++j) {
          if (j == i) continue;
          ++out.pairs_checked;
          out.min_distance = std::min(out.min_distance, bergman_distance(Point{a}, Point{cplx(idx.re()[j], idx.im()[j])}));
        }
    }
    return out;
  }
  for (std::size_t i = 0; i < lat.centers.size(); ++i)
    for (std::size_t j = i + 1; j < lat.centers.size(); ++j) {
      double d = bergman_distance(lat.centers[i], lat.centers[j]);
      ++out.pairs_checked;
      if (d < window) out.min_distance = std::min(out.min_distance, d);
    }
  return out;
}

}  // namespace varberg

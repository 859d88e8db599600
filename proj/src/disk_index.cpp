#include "varberg/disk_index.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "varberg/simd.hpp"

namespace varberg {

namespace {

constexpr double kAnglePad = 1e-9;
constexpr double kRadiusPad = 1e-12;

double half_angle(double rho, double c, double R) {
  double cs = (rho * rho + c * c - R * R) / (2.0 * rho * c);
  return std::acos(std::clamp(cs, -1.0, 1.0));
}

}  // namespace

double angle_of(cplx w) {
  double t = std::atan2(w.imag(), w.real());
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Window band_window(double rlo, double rhi, const Disk& disk) {
  double c = std::abs(disk.center);
  double R = disk.radius * (1.0 + 1e-12) + kRadiusPad;
  double lo = std::max(rlo, c - R);
  double hi = std::min(rhi, c + R);
  if (lo > hi) return {};
  if (lo <= R - c || c == 0.0) return {1, 0.0, 0.0};
  double half = std::max(half_angle(lo, c, R), half_angle(hi, c, R));
  if (c > R) {
    double star = std::sqrt(c * c - R * R);
    if (star >= lo && star <= hi) half = std::asin(std::min(1.0, R / c));
  }
  half += kAnglePad;
  if (half >= kPi) return {1, 0.0, 0.0};
  return {2, angle_of(disk.center), half};
}

void window_slices(const Window& win, const double* theta, std::size_t begin, std::size_t end,
                   std::vector<Slice>& out) {
  if (win.kind == 0 || begin == end) return;
  if (win.kind == 1) {
    out.push_back({begin, end});
    return;
  }
  auto push = [&](double a, double b) {
    const double* first = std::lower_bound(theta + begin, theta + end, a);
    const double* last = std::upper_bound(theta + begin, theta + end, b);
    if (first < last) out.push_back({static_cast<std::size_t>(first - theta), static_cast<std::size_t>(last - theta)});
  };
  double a = win.center - win.half;
  double b = win.center + win.half;
  if (a < 0.0) {
    push(a + kTwoPi, kTwoPi);
    push(0.0, b);
  } else if (b >= kTwoPi) {
    push(a, kTwoPi);
    push(0.0, b - kTwoPi);
  } else {
    push(a, b);
  }
}

void DiskIndex::finish(const std::vector<cplx>& pts, const std::vector<double>& weights,
                       std::vector<std::vector<std::size_t>>& groups) {
  std::vector<double> ang(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) ang[i] = angle_of(pts[i]);
  for (auto& g : groups) {
    if (g.empty()) continue;
    std::stable_sort(g.begin(), g.end(), [&](std::size_t x, std::size_t y) { return ang[x] < ang[y]; });
    Bin b;
    b.begin = re_.size();
    b.rlo = INFINITY;
    b.rhi = 0.0;
    for (std::size_t i : g) {
      double m = std::abs(pts[i]);
      b.rlo = std::min(b.rlo, m);
      b.rhi = std::max(b.rhi, m);
      theta_.push_back(ang[i]);
      re_.push_back(pts[i].real());
      im_.push_back(pts[i].imag());
      w_.push_back(weights.empty() ? 1.0 : weights[i]);
      id_.push_back(i);
    }
    b.end = re_.size();
    bins_.push_back(b);
  }
}

DiskIndex DiskIndex::from_points(const std::vector<cplx>& pts, const std::vector<double>& weights,
                                 double bin_t) {
  if (!weights.empty() && weights.size() != pts.size()) throw ArgumentError("DiskIndex: weight count mismatch");
  if (!(bin_t > 0.0)) throw ArgumentError("DiskIndex: bin width must be positive");
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double m = std::min(std::abs(pts[i]), std::nextafter(1.0, 0.0));
    auto b = static_cast<std::size_t>(std::atanh(m) / bin_t);
    if (b >= groups.size()) groups.resize(b + 1);
    groups[b].push_back(i);
  }
  DiskIndex idx;
  idx.finish(pts, weights, groups);
  return idx;
}

DiskIndex DiskIndex::from_groups(const std::vector<cplx>& pts, const std::vector<double>& weights,
                                 const std::vector<std::size_t>& offsets) {
  if (!weights.empty() && weights.size() != pts.size()) throw ArgumentError("DiskIndex: weight count mismatch");
  if (offsets.empty() || offsets.back() != pts.size()) throw ArgumentError("DiskIndex: bad group offsets");
  std::vector<std::vector<std::size_t>> groups(offsets.size() - 1);
  for (std::size_t g = 0; g + 1 < offsets.size(); ++g) {
    groups[g].resize(offsets[g + 1] - offsets[g]);
    std::iota(groups[g].begin(), groups[g].end(), offsets[g]);
  }
  DiskIndex idx;
  idx.finish(pts, weights, groups);
  return idx;
}

void DiskIndex::query(cplx a, double s, std::vector<Slice>& out) const {
  out.clear();
  Disk d = euclidean_disk(a, s);
  for (const Bin& b : bins_) window_slices(band_window(b.rlo, b.rhi, d), theta_.data(), b.begin, b.end, out);
}

double DiskIndex::ball_mass(cplx a, double s) const {
  std::vector<Slice> sl;
  query(a, s, sl);
  double total = 0.0;
  double s2 = s * s;
  for (const Slice& x : sl)
    total += simd::ball_mass(a.real(), a.imag(), s2, re_.data() + x.begin, im_.data() + x.begin,
                             w_.data() + x.begin, x.end - x.begin);
  return total;
}

std::size_t DiskIndex::ball_count(cplx a, double s) const {
  std::vector<Slice> sl;
  query(a, s, sl);
  std::size_t total = 0;
  double s2 = s * s;
  for (const Slice& x : sl)
    total += simd::ball_count(a.real(), a.imag(), s2, re_.data() + x.begin, im_.data() + x.begin, x.end - x.begin);
  return total;
}

}  // namespace varberg

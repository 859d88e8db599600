#pragma once

#include <cstddef>
#include <vector>

#include "varberg/geometry.hpp"

namespace varberg {

// Half-open slice [begin, end) of an index's sorted arrays.
struct Slice {
  std::size_t begin = 0;
  std::size_t end = 0;
};

// Angular window of the circle band rlo <= |w| <= rhi that can meet the disk.
// kind: 0 = empty, 1 = full circle, 2 = [center - half, center + half].
struct Window {
  int kind = 0;
  double center = 0.0;
  double half = 0.0;
};
Window band_window(double rlo, double rhi, const Disk& disk);

// Spatial index for planar point sets (one complex dimension). Points are
// grouped into radial bins and sorted by angle inside each bin; a query for a
// pseudo-hyperbolic ball returns a handful of contiguous slices that contain
// every point of the ball. Callers apply the exact membership test.
class DiskIndex {
 public:
  DiskIndex() = default;

  // Bins of constant Bergman-radius width bin_t.
  static DiskIndex from_points(const std::vector<cplx>& pts, const std::vector<double>& weights,
                               double bin_t = 0.02);
  // One bin per group: group g holds points [offsets[g], offsets[g+1]).
  static DiskIndex from_groups(const std::vector<cplx>& pts, const std::vector<double>& weights,
                               const std::vector<std::size_t>& offsets);

  // Slices covering E(a, s) (plus a thin safety margin).
  void query(cplx a, double s, std::vector<Slice>& out) const;

  // sum of weights of points in E(a, s), exact predicate
  double ball_mass(cplx a, double s) const;
  std::size_t ball_count(cplx a, double s) const;

  std::size_t size() const { return re_.size(); }
  const double* re() const { return re_.data(); }
  const double* im() const { return im_.data(); }
  const double* weights() const { return w_.data(); }
  // original position of the i-th sorted point
  std::size_t original(std::size_t i) const { return id_[i]; }

 private:
  struct Bin {
    double rlo = 0.0;
    double rhi = 0.0;
    std::size_t begin = 0;
    std::size_t end = 0;
  };
  void finish(const std::vector<cplx>& pts, const std::vector<double>& weights,
              std::vector<std::vector<std::size_t>>& groups);

  std::vector<Bin> bins_;
  std::vector<double> theta_, re_, im_, w_;
  std::vector<std::size_t> id_;
};

// Angle in [0, 2 pi).
double angle_of(cplx w);

// Append the index slices of sorted angles theta[begin, end) lying in the window.
void window_slices(const Window& win, const double* theta, std::size_t begin, std::size_t end,
                   std::vector<Slice>& out);

}  // namespace varberg

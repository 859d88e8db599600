#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "varberg/disk_index.hpp"
#include "varberg/holo.hpp"

namespace varberg {

enum class MeasureKind { Lebesgue, Density, Pullback, PointMasses, Empty };
const char* measure_kind_name(MeasureKind k);

struct Provenance {
  MeasureKind kind = MeasureKind::Empty;
  std::string descriptor;
  int radial = 0;
  int angular = 0;
  double rho_max = 0.0;
  double kappa = 0.0;
  double grade_until = 0.0;
};

// Normalized volume measure dV.
// n = 1: radial panels [0, 1/2], [1/2, 3/4], ... up to rho_max, then [rho_max, 1];
//   `radial` Gauss-Legendre nodes split over the panels, `angular` equispaced
//   nodes per circle (more near the sphere when kappa > 0: a circle of radius rho
//   gets max(angular, ceil(kappa * 2 pi rho / (1 - rho^2))) nodes, frozen beyond grade_until).
// n >= 2: radial * angular stratified random points with equal weights.
struct LebesgueSpec {
  int n = 1;
  int radial = 400;
  int angular = 512;
  double rho_max = 1.0 - 1e-6;
  double kappa = 0.0;
  double grade_until = 1.0 - 1e-4;
  std::uint64_t seed = 1;
};

// A one-dimensional polar rule described circle by circle, never materialized.
// Used to count nodes of very fine grids inside pseudo-hyperbolic disks.
struct PolarGrid {
  std::vector<double> rho;
  std::vector<double> node_weight;  // weight of each node on the circle
  std::vector<std::size_t> count;   // nodes on the circle
  std::vector<double> frac;         // node m sits at angle (m + frac) * 2 pi / count

  static PolarGrid make(const LebesgueSpec& spec);
  cplx node(std::size_t ring, std::size_t m) const;
  std::size_t size() const;
  double total_mass() const;
  // weight of the nodes inside E(a, s), exact per-node membership
  double ball_mass(cplx a, double s) const;
};

struct Density;

class QuadMeasure {
 public:
  QuadMeasure() = default;
  QuadMeasure(int n, std::vector<double> re, std::vector<double> im, std::vector<double> weights, Provenance prov);

  static QuadMeasure empty(int n);

  int dim() const { return n_; }
  std::size_t size() const { return weights_.size(); }
  Vec node(std::size_t k) const;
  // coordinate arrays, node-major: coordinate i of node k at [k * n + i]
  const std::vector<double>& re() const { return *re_; }
  const std::vector<double>& im() const { return *im_; }
  const std::vector<double>& weights() const { return weights_; }
  const Provenance& provenance() const { return prov_; }
  // n = 1 polar rules: node groups sharing a circle
  const std::vector<std::size_t>& ring_offsets() const { return rings_; }
  void set_ring_offsets(std::vector<std::size_t> offsets);

  double total_mass() const;
  // weights equal to +inf mark nodes where an integrand overflowed
  bool has_sentinel() const;
  std::size_t first_sentinel() const;
  bool all_zero() const;

  QuadMeasure with_weights(std::vector<double> w, Provenance prov) const;

  // mass of E(a, s), exact per-node membership. One-dimensional polar rules with
  // equal weights on each circle count circle by circle; other one-dimensional
  // measures use the spatial index.
  double ball_mass(const Point& a, double s) const;
  // circle description when every circle of a polar rule carries equal weights
  const PolarGrid* polar() const { return polar_.get(); }
  const DiskIndex& index() const;

 private:
  friend QuadMeasure lebesgue(const LebesgueSpec& spec);
  friend QuadMeasure apply_density(const QuadMeasure& base, const Density& density);

  int n_ = 0;
  // coordinates are shared between a measure and its reweightings
  std::shared_ptr<const std::vector<double>> re_, im_;
  std::vector<double> weights_;
  std::vector<std::size_t> rings_;
  std::shared_ptr<const PolarGrid> polar_;
  Provenance prov_;
  mutable std::shared_ptr<const DiskIndex> index_;
};

QuadMeasure lebesgue(const LebesgueSpec& spec);

// Multiplies base weights by (1 - |w|^2)^boundary_power * |f(w)|^modulus_power.
struct Density {
  double boundary_power = 0.0;
  HoloFunction modulus_of;
  double modulus_power = 1.0;
  std::string describe() const;
};
QuadMeasure apply_density(const QuadMeasure& base, const Density& density);

QuadMeasure point_masses(int n, const std::vector<std::pair<Vec, double>>& masses);

// Four-lane striped sum in the order used by the SIMD kernels.
double striped_sum(const double* x, std::size_t n);

}  // namespace varberg

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "varberg/disk_index.hpp"
#include "varberg/geometry.hpp"

namespace varberg {

struct LatticeOptions {
  // candidate step as a fraction of r; must stay below 1/2
  double step_factor = 0.45;
  // Overlap probes are the candidates within this Bergman radius of the origin;
  // unset means r. Keeping it independent of rho_max makes bounds comparable
  // across truncations.
  std::optional<double> overlap_probe_radius;
  // dimension >= 2: random candidate stream and coverage-repair samples
  std::uint64_t seed = 1;
  int repair_samples = 20000;
};

struct Lattice {
  int n = 1;
  double r = 0.0;
  double coverage_radius = 0.0;  // rho_max
  std::vector<Point> centers;
  int overlap_bound = 0;
  double overlap_probe_radius = 0.0;
  std::size_t overlap_probes = 0;
  std::size_t candidates = 0;
  // one-dimensional lattices: centers grouped by shell, shell g = [shell_offsets[g], shell_offsets[g+1])
  std::vector<std::size_t> shell_offsets;

  // Index over the centers (dimension 1 only).
  const DiskIndex& index() const;
  void build_index();

 private:
  std::shared_ptr<const DiskIndex> index_;
};

Lattice make_lattice(int n, double r, double rho_max, const LatticeOptions& opts = {});

// #{k : x in B(a_k, radius)}
int lattice_multiplicity(const Lattice& lat, const Point& x, double radius);

struct CoverageAudit {
  std::size_t samples = 0;
  std::size_t uncovered = 0;
  double worst_distance = 0.0;  // max over samples of the distance to the nearest center
};
CoverageAudit audit_coverage(const Lattice& lat, std::size_t samples, std::uint64_t seed);

struct SeparationAudit {
  double min_distance = INFINITY;
  std::size_t pairs_checked = 0;
};
// Minimum Bergman distance over center pairs closer than `window` (pairs farther apart are skipped).
SeparationAudit audit_separation(const Lattice& lat, double window);

}  // namespace varberg

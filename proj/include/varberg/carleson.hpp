#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "varberg/exponent.hpp"
#include "varberg/lattice.hpp"
#include "varberg/measure.hpp"
#include "varberg/operators.hpp"

namespace varberg {

// Fixed decision constants; copied into every report.
struct Thresholds {
  double divergence_factor = 10.0;  // last shell > factor * first shell => divergence
  double decay_factor = 0.1;        // last shell <= factor * peak shell => compact / decaying
};

// Shell j collects points with floor(log2(1 / (1 - |a|))) = j.
int shell_index(double modulus);

struct ShellEntry {
  int shell = 0;
  double one_minus_a = 0.0;  // at the shell's maximizer
  double max_ratio = 0.0;
  std::size_t count = 0;
  bool flag = false;  // non-finite, or above divergence_factor * first shell
};

struct ShellSummary {
  std::vector<ShellEntry> shells;
  double max_value = 0.0;
  std::size_t argmax = 0;
  bool any_infinite = false;
  double first = 0.0, last = 0.0, peak = 0.0;
  bool divergence = false;  // any infinite or last > divergence_factor * first
  bool decays = false;      // last <= decay_factor * peak
};

// Folds (modulus, value) samples into dyadic shells.
ShellSummary summarize_shells(const std::vector<double>& modulus, const std::vector<double>& value,
                              const Thresholds& th);

struct CarlesonReport {
  std::string mode;  // "bounded" or "vanishing"
  std::string measure;
  double constant = 0.0;
  Point argmax_center;
  double r = 0.0;
  double beta = 0.0;
  double rho_max = 0.0;
  std::size_t centers = 0;
  std::vector<ShellEntry> shell_profile;
  bool divergence_flag = false;
  bool sentinel = false;
  bool compact = false;  // vanishing mode verdict
  double last_over_first = 0.0;
  double last_over_peak = 0.0;
  Thresholds thresholds;
};

// sup over centers of mu(B(a, r)) / (1 - |a|^2)^{n+1+beta}
CarlesonReport carleson_constant(const QuadMeasure& mu, double r, double beta, const Lattice& lattice,
                                 const Thresholds& th = {});
CarlesonReport vanishing_profile(const QuadMeasure& mu, double r, double beta, const Lattice& lattice,
                                 const Thresholds& th = {});

struct PropertyReport {
  std::string name;
  std::size_t samples = 0;
  double observed_bound = 0.0;
  std::optional<double> asserted_bound;
  bool pass = false;
  std::string notes;
  std::vector<ShellEntry> shell_profile;
  bool divergence_flag = false;
  std::map<std::string, double> metrics;
};

// Evaluation points refined toward the sphere: shells out to 1 - |z| = 1e-6
// including every radius 1 - 10^{-k}, k = 1..6.
std::vector<Point> boundary_sample_grid(int n, int angular, std::uint64_t seed = 1);

enum class SymbolMode { Bounded, Compact };

// sup_z |u(z)| (1-|z|^2)^{(n+1)/p(z)} / (1-|phi(z)|^2)^{(n+1)/p(phi(z))}.
// Bounded mode shells by |z|; compact mode shells by |phi(z)| and asks for decay.
PropertyReport wco_symbol_sup(const HoloFunction& u, const SelfMap& phi, const ExponentField& p,
                              const std::vector<Point>& grid, SymbolMode mode = SymbolMode::Bounded,
                              const Thresholds& th = {});

using ProbeOperator = std::variant<ToeplitzSpec, WcoSpec, DiffSpec>;

// ||T f_{a,N}||_{p(.)} along a family ordered by |a|; compact-consistent iff the
// last norm is at most decay_factor times the first.
PropertyReport compactness_probe(const ProbeOperator& op, const ExponentField& p, const QuadMeasure& norm_measure,
                                 const std::vector<Point>& family, double N = 2.0, const Thresholds& th = {});

struct DiffDiagnostics {
  std::vector<std::string> names;
  std::vector<CarlesonReport> reports;
  std::vector<bool> zero_measure;
  bool bounded_consistent = false;
  double alpha = 0.0;
};

// Carleson tests (beta = 0) of mu_{u,phi,d}, mu_{v,psi,d}, lambda_{phi,alpha},
// lambda_{psi,alpha}; with_plus adds the "+1" variants.
DiffDiagnostics diff_diagnostics(const DiffSpec& spec, const ExponentField& p, const QuadMeasure& base, double r,
                                 const Lattice& lattice, bool with_plus = false, const Thresholds& th = {});

}  // namespace varberg

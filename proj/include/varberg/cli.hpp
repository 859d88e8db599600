#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

namespace varberg {

struct RunOptions {
  std::string subcommand;  // lattice | norm | carleson | toeplitz | wco | diff | verify
  std::string scenario;
  std::string out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> rho_max;
  std::optional<std::pair<int, int>> resolution;  // radial x angular for Lebesgue measures
};

// 0: every assertion holds; 2: an assertion failed; 1: input error.
int run_scenario(const RunOptions& opts, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace varberg

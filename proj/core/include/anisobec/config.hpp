#pragma once

#include "anisobec/gpe3d.hpp"
#include "anisobec/problem.hpp"

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anisobec::bench {

/// Raised on malformed configs; the CLI maps it to exit code 2. The
/// message carries line/field diagnostics.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { FormulaFirstOrder, FormulaExactRL, Variational, Solver3D };

std::string_view to_string(Method m);
Method method_from_string(std::string_view name); // throws ConfigError

/// One parsed run configuration. Flat typed key = value lines grouped
/// into [sections]; frequencies are cyclic (Hz) in the file and converted
/// to rad/s here. See configs/ for annotated examples.
struct RunConfig {
  AtomSpecies species = AtomSpecies::rubidium87();
  TrapSpec trap{2.0 * std::numbers::pi * 175.0, 2.0 * std::numbers::pi * 3.5,
                1};

  // sweep axis: explicit list wins over the log-spaced range
  std::vector<double> N_list;
  double N_min = 0.0, N_max = 1.0; // in units of N_T unless absolute
  int points = 30;
  bool range_absolute = false;
  std::vector<Method> methods;

  // optional grid overrides for the 3D solver
  std::optional<int> nx, ny, nz;
  std::optional<double> Lx, Ly, Lz;

  gpe::Numerics numerics;

  double ground_state_N = 0.0; // [ground_state] N, for the field export

  std::string output_path;
  int workers = 1;
  double mem_cap_gib = 4.0;

  ProblemSpec problem(double N) const {
    return ProblemSpec{species, trap, N};
  }

  /// Canonical serialization of the semantically meaningful fields
  /// (physics, sweep axis, grid, numerics). Output path, worker count and
  /// memory cap are excluded: they do not change results.
  std::string canonical() const;
  std::uint64_t hash() const;
};

RunConfig parse_config(std::istream& is, const std::string& source_name);
RunConfig parse_config_file(const std::filesystem::path& path);

} // namespace anisobec::bench

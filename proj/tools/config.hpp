#pragma once

// Scenario config files: flat `key = value` lines, `#` comments, and one
// `[piece]` section per piece of the moving set.
//
//   scenario = ramp            # a built-in family; or describe one:
//   dimension = 2
//   horizon = 1
//   x0 = 1 0
//   grid.h = 0.25              # or grid.times = 0, 0.5, 1
//   [piece]
//   start = 0
//   end = 1
//   kind = complement_ball     # halfspace | ball | box | complement_ball
//   center = 0 0
//   radius = 1
//   path.knot = 0  0 0         # repeatable; also path.constant, path.sin
//   path.knot = 1  1 0

#include "sweep/lab.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace sweep::cli {

struct Config {
  Config(std::optional<std::string> builtin, Scenario scenario)
      : builtin(std::move(builtin)), scenario(std::move(scenario)) {}

  /// Name of the built-in family, if the config selects one.
  std::optional<std::string> builtin;
  Scenario scenario;
  /// Explicit grid; absent means a uniform grid of step default_h.
  std::optional<TimeGrid> grid;
  double default_h = 0.25;
  SafetyFactor gamma{};
  double projection_tol = 1e-10;
  int max_refinements = 12;
  double target_residual = 1e-3;
  std::uint64_t seed = 0;
  bool converge_refine = true;
  double converge_initial_h = 0.25;

  TimeGrid solve_grid() const;
  SolveConfig solve_config() const;
};

/// Throws ConfigError with a line number on any problem.
Config parse_config(std::string_view text);
Config load_config(const std::filesystem::path &path);

} // namespace sweep::cli

#pragma once

/// @file
/// Built-in scenarios with known solutions, refinement studies against the
/// true moving set, and the freeze-based stability experiment.

#include "sweep/residual.hpp"
#include "sweep/solver.hpp"

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace sweep {

struct Scenario {
  std::string name;
  MovingSet C;
  Vec x0;
  /// Empty when no closed form is known.
  ReferenceSolution reference;
  /// Why the family is nonempty, closed, connected and uniformly
  /// prox-regular, lower semicontinuous in time, and why feasible continuous
  /// selections extend. Asserted, not computed.
  std::string notes;

  double horizon() const { return C.horizon(); }
};

/// ramp, jump, sine-play, hole, disk and crescent.
std::vector<Scenario> builtin_scenarios();

/// Case-insensitive lookup. Throws std::invalid_argument for unknown names.
Scenario find_scenario(std::string_view name);

struct ConvergenceRow {
  int level;
  double h;
  double residual;
  double variation;
  std::optional<double> sup_error;
};

struct ConvergenceStudy {
  std::string scenario;
  std::vector<ConvergenceRow> rows;
  /// Empty iff every asserted invariant held.
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

struct ConvergenceOptions {
  int levels = 5;
  double initial_h = 0.25;
  /// Halve the grid between levels. Disabling it freezes the grid, which
  /// violates the study's invariants by construction.
  bool refine = true;
  SafetyFactor gamma{};
  /// Minimum factor by which |R| must drop per halving.
  double decrease_factor = 1.5;
  /// |R| at or below this is treated as zero.
  double residual_floor = 1e-12;
};

/// Solves on successively halved uniform grids (jump times included) and
/// records h, R against the true C with nu = |dx|, variation and the sup
/// error against the reference. Asserts that h decreases, that |R| drops by
/// decrease_factor per level or stays below residual_floor, and that the sup
/// error is at most 2h.
ConvergenceStudy convergence_study(const Scenario &s,
                                   const ConvergenceOptions &options = {});

struct StabilityRow {
  std::size_t n;
  double h;
  /// Residual of x_n against the true C and against its freeze C_n.
  double residual_true;
  double residual_frozen;
  double variation;
  /// ||x_n - x_{2n}||_inf; absent at the top level.
  std::optional<double> cauchy;
  /// max over sampled t of d(C(t), x_n(t)), and the allowed h * speed.
  double osc_defect;
  double osc_bound;
};

struct StabilityStudy {
  std::string scenario;
  std::vector<StabilityRow> rows;
  double variation_bound = 0.0;
  Verdict final_verdict = Verdict::NotSolution;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

struct StabilityOptions {
  std::size_t n_max = 256;
  SafetyFactor gamma{};
  double residual_tol = 1e-2;
  double cauchy_tol = 1e-2;
};

/// For n = 1, 2, 4, ..., n_max: freezes C on the uniform mesh T/n (jump
/// times included), solves the frozen problem and reports E_n against the
/// true C, variations, the sup distance to x_{2n} and the feasibility
/// defect of x_n for the true C. The top-level x_n must certify against C.
StabilityStudy stability_study(const Scenario &s,
                               const StabilityOptions &options = {});

/// A point of S near `around`: the projection of a Gaussian perturbation of
/// scale `scale`, falling back to the projection of `around` when the
/// perturbation leaves the reach.
Vec random_feasible_point(const ProxSet &S, const Vec &around, double scale,
                          std::mt19937_64 &rng, SafetyFactor gamma = {});

/// A trajectory feasible at every grid time: each step either takes the
/// catching-up projection, stays put, or jumps to a random nearby feasible
/// point. The grid has between 4 and 64 uniform cells plus the jump times.
BVTrajectory random_admissible_trajectory(const Scenario &s,
                                          std::mt19937_64 &rng,
                                          SafetyFactor gamma = {});

/// y_k = random_feasible_point(C(t_k), x_k, scale) on the grid of x.
BVTrajectory random_feasible_test(const MovingSet &C, const BVTrajectory &x,
                                  double scale, std::mt19937_64 &rng,
                                  SafetyFactor gamma = {});

/// nu = |dx|, or Lebesgue measure when x is constant.
ReferenceMeasure default_reference_measure(const BVTrajectory &x);

} // namespace sweep

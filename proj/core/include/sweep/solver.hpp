#pragma once

/// @file
/// Moreau's catching-up scheme x_{k+1} = proj_{C(t_{k+1})}(x_k) and global
/// grid refinement driven by the integral residual.

#include "sweep/dynamics.hpp"
#include "sweep/errors.hpp"
#include "sweep/measure.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

namespace sweep {

struct SolveConfig {
  TimeGrid grid;
  SafetyFactor gamma{};
  double projection_tol = 1e-10;
  int max_refinements = 12;
};

/// Throws InfeasiblePoint if x0 is not in C(0) up to projection_tol,
/// std::invalid_argument if the grid misses a jump time or the horizon, and
/// StepOutOfReach when d(C(t_{k+1}), x_k) >= gamma * rho.
BVTrajectory catching_up(const MovingSet &C, const Vec &x0,
                         const SolveConfig &cfg);

/// A closed-form solution t -> x(t).
using ReferenceSolution = std::function<Vec(double)>;

/// sup over [0,T] of ||x(t) - ref(t)||, sampled at every grid time, at the
/// left end of every cell and at `samples` interior points per cell.
double sup_error(const BVTrajectory &x, const ReferenceSolution &ref,
                 int samples = 8);

struct RefinementRow {
  int level;
  double h_max;
  double residual;
  double variation;
  std::optional<double> sup_error;
};

struct RefinementResult {
  BVTrajectory trajectory;
  std::vector<RefinementRow> log;
};

/// Raised by refine_until when the refinement budget runs out; carries the
/// run with the smallest |R|.
class BudgetExhausted : public Error {
public:
  BudgetExhausted(RefinementResult best, double best_residual);
  const RefinementResult &best() const { return best_; }

private:
  RefinementResult best_;
};

/// Solves on cfg.grid and its successive midpoint refinements, evaluating R
/// against C with nu = |dx| (pure Lebesgue for a constant output), until
/// |R| <= target_residual. At most cfg.max_refinements refinements.
RefinementResult refine_until(const MovingSet &C, const Vec &x0,
                              const SolveConfig &cfg, double target_residual,
                              const ReferenceSolution &reference = {});

/// Columns level,h_max,residual,variation,sup_error_if_reference_known; the
/// last column is empty without a reference.
void write_refinement_csv(std::ostream &out,
                          const std::vector<RefinementRow> &log);

} // namespace sweep

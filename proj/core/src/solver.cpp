#include "sweep/solver.hpp"

#include "sweep/residual.hpp"
#include "sweep/text.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace sweep {

BVTrajectory catching_up(const MovingSet &C, const Vec &x0,
                         const SolveConfig &cfg) {
  const TimeGrid &grid = cfg.grid;
  const double T = C.horizon();
  if (!(cfg.projection_tol > 0.0))
    throw std::invalid_argument("solver: projection_tol must be positive");
  if (std::abs(grid.horizon() - T) > 1e-12 * std::max(1.0, T))
    throw std::invalid_argument("solver: grid does not end at the horizon");
  if (x0.size() != C.dim())
    throw std::invalid_argument("solver: x0 has the wrong dimension");
  for (double j : C.jump_times())
    if (!grid.index_of(j, 1e-12 * std::max(1.0, T)))
      throw std::invalid_argument("solver: grid misses the jump at t=" +
                                  format_number(j));
  const double d0 = distance(at(C, 0.0), x0);
  if (d0 > cfg.projection_tol)
    throw InfeasiblePoint(d0);

  const double reach = cfg.gamma.value() * C.rho();
  std::vector<Vec> values;
  values.reserve(grid.size());
  values.push_back(x0);
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    const double t = std::min(grid[k + 1], T);
    const ProxSet S = at(C, t);
    const Vec &prev = values.back();
    const double d = distance(S, prev);
    if (!(d < reach))
      throw StepOutOfReach(k, t, d, reach);
    // A state within projection_tol of the set is kept: projecting it would
    // add an increment whose direction is pure rounding noise.
    values.push_back(d <= cfg.projection_tol ? prev : nearest_point(S, prev));
  }
  return BVTrajectory(grid, std::move(values));
}

double sup_error(const BVTrajectory &x, const ReferenceSolution &ref,
                 int samples) {
  const auto &ts = x.grid().times();
  double best = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    best = std::max(best, (x.value(k) - ref(ts[k])).norm());
    if (k + 1 == ts.size())
      break;
    const double a = ts[k];
    const double b = ts[k + 1];
    for (int i = 1; i <= samples; ++i) {
      double t = a + (b - a) * i / (samples + 1);
      best = std::max(best, (x.value(k) - ref(t)).norm());
    }
    // Left limit at t_{k+1}.
    double t = std::max(a, b - 1e-12 * std::max(1.0, b));
    best = std::max(best, (x.value(k) - ref(t)).norm());
  }
  return best;
}

BudgetExhausted::BudgetExhausted(RefinementResult best, double best_residual)
    : Error("refinement budget exhausted; best |R| = " +
            format_number(std::abs(best_residual))),
      best_(std::move(best)) {}

RefinementResult refine_until(const MovingSet &C, const Vec &x0,
                              const SolveConfig &cfg, double target_residual,
                              const ReferenceSolution &reference) {
  if (!(target_residual > 0.0))
    throw std::invalid_argument("refine_until: target must be positive");
  if (cfg.max_refinements < 0)
    throw std::invalid_argument("refine_until: negative refinement budget");

  SolveConfig level_cfg = cfg;
  std::vector<RefinementRow> log;
  std::optional<RefinementResult> best;
  double best_residual = kInfinity;
  for (int level = 0;; ++level) {
    BVTrajectory x = catching_up(C, x0, level_cfg);
    const double var = variation(x);
    const ReferenceMeasure nu = var > 0.0
                                    ? canonical_reference_measure(x)
                                    : canonical_reference_measure(x, 1.0);
    const ResidualReport report =
        integral_residual(x, nu, C, std::max(cfg.projection_tol,
                                             kFeasibilityTol));
    RefinementRow row{level, level_cfg.grid.max_step(), report.R, var,
                      std::nullopt};
    if (reference)
      row.sup_error = sup_error(x, reference);
    log.push_back(row);

    if (!best || std::abs(report.R) <= best_residual) {
      best = RefinementResult{x, log};
      best_residual = std::abs(report.R);
    }
    if (std::abs(report.R) <= target_residual)
      return RefinementResult{std::move(x), std::move(log)};
    if (level >= cfg.max_refinements) {
      best->log = log;
      throw BudgetExhausted(std::move(*best), best_residual);
    }
    level_cfg.grid = level_cfg.grid.refined();
  }
}

void write_refinement_csv(std::ostream &out,
                          const std::vector<RefinementRow> &log) {
  out << "level,h_max,residual,variation,sup_error_if_reference_known\n";
  for (const auto &row : log) {
    out << row.level << ',' << format_number(row.h_max) << ','
        << format_number(row.residual) << ',' << format_number(row.variation)
        << ',';
    if (row.sup_error)
      out << format_number(*row.sup_error);
    out << '\n';
  }
}

} // namespace sweep

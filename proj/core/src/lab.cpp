#include "sweep/lab.hpp"

#include "sweep/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sweep {

namespace {

Vec vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values)
    v[i++] = x;
  return v;
}

Scenario ramp() {
  auto path = MotionPath::piecewise_linear({{0.0, vec({0.0})}, {2.0, vec({2.0})}});
  return Scenario{
      "ramp",
      MovingSet::single(ProxSet::box(vec({-1.0}), vec({1.0})), path, 2.0),
      vec({0.0}),
      [](double t) { return vec({std::max(0.0, t - 1.0)}); },
      "Interval [t-1, t+1] on [0,2]: convex, nonempty, closed and connected, "
      "translated with unit speed so the family is Lipschitz in Hausdorff "
      "distance. Convexity lets any feasible continuous selection be used "
      "as a test. The play operator gives x(t) = max(0, t-1)."};
}

Scenario jump() {
  const auto zero = MotionPath::zero(1);
  MovingSet C({Piece{0.0, 1.0, ProxSet::box(vec({0.0}), vec({1.0})), zero},
               Piece{1.0, 2.0, ProxSet::box(vec({2.0}), vec({3.0})), zero}});
  return Scenario{
      "jump", std::move(C), vec({0.0}),
      [](double t) { return vec({t < 1.0 ? 0.0 : 2.0}); },
      "[0,1] on [0,1) and [2,3] on [1,2]: convex pieces, right-continuous "
      "with a single jump at t=1, hence lower semicontinuous from the right. "
      "The solution sits at 0 and is projected to 2 at the jump."};
}

Scenario sine_play() {
  const double T = 2.0 * std::numbers::pi;
  auto path = MotionPath::sinusoidal(1.0, 1.0, 0.0, vec({1.0}));
  return Scenario{
      "sine-play",
      MovingSet::single(ProxSet::box(vec({-1.0}), vec({1.0})), path, T),
      vec({0.0}), [](double) { return vec({0.0}); },
      "Interval [sin t - 1, sin t + 1] on [0, 2 pi]: convex and Lipschitz in "
      "time. The origin never leaves the interval, so x = 0 is the "
      "solution."};
}

Scenario hole() {
  auto path = MotionPath::piecewise_linear(
      {{0.0, vec({0.0, 0.0})}, {1.0, vec({1.0, 0.0})}});
  return Scenario{
      "hole",
      MovingSet::single(
          ProxSet::complement_of_open_ball(vec({0.0, 0.0}), 1.0), path, 1.0),
      vec({1.0, 0.0}),
      [](double t) { return vec({1.0 + t, 0.0}); },
      "Plane minus the open unit ball centred at (t,0): closed, connected, "
      "1-uniformly prox-regular, translated at unit speed. Prox-regular sets "
      "that move continuously keep feasible selections extendable inside "
      "the reach. By symmetry the state is pushed along the axis, "
      "x(t) = (1+t, 0)."};
}

Scenario disk() {
  const double T = 2.0 * std::numbers::pi;
  auto path = MotionPath::sinusoidal(1.0, 1.0, std::numbers::pi / 2,
                                     vec({1.0, 0.0})) +
              MotionPath::sinusoidal(1.0, 1.0, 0.0, vec({0.0, 1.0}));
  return Scenario{
      "disk",
      MovingSet::single(ProxSet::ball(vec({0.0, 0.0}), 1.0), path, T),
      vec({0.0, 0.0}), [](double) { return vec({0.0, 0.0}); },
      "Closed unit disk centred at (cos t, sin t): convex, Lipschitz in "
      "time. The origin stays on the boundary throughout, so x = 0."};
}

Scenario crescent() {
  const double T = 2.0 * std::numbers::pi;
  auto base = ProxSet::intersect_ball(
      ProxSet::complement_of_open_ball(vec({0.0, 0.0}), 1.0),
      vec({1.3, 0.0}), 0.5);
  auto path = MotionPath::sinusoidal(0.3, 1.0, 0.0, vec({0.0, 1.0}));
  return Scenario{
      "crescent", MovingSet::single(base, path, T), vec({1.3, 0.5}), {},
      "Points outside the open unit disk and within 0.5 of (1.3,0), moved "
      "vertically by 0.3 sin t. The intersection with a ball smaller than "
      "the reach keeps the prox constant 1 of the base; the set is a "
      "connected lens. No closed-form solution."};
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

double reach(const MovingSet &C, SafetyFactor gamma) {
  return gamma.value() * C.rho();
}

/// Smallest power-of-two cell count whose uniform step moves the set by
/// less than the reach.
std::size_t min_cells(const MovingSet &C, SafetyFactor gamma) {
  const double limit = reach(C, gamma);
  std::size_t n = 1;
  while (C.horizon() / static_cast<double>(n) * C.speed_bound() >= limit)
    n *= 2;
  return n;
}

} // namespace

std::vector<Scenario> builtin_scenarios() {
  return {ramp(), jump(), sine_play(), hole(), disk(), crescent()};
}

Scenario find_scenario(std::string_view name) {
  for (auto &s : builtin_scenarios())
    if (iequals(s.name, name))
      return s;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

ReferenceMeasure default_reference_measure(const BVTrajectory &x) {
  return variation(x) > 0.0 ? canonical_reference_measure(x)
                            : canonical_reference_measure(x, 1.0);
}

ConvergenceStudy convergence_study(const Scenario &s,
                                   const ConvergenceOptions &options) {
  if (options.levels < 2)
    throw std::invalid_argument("convergence study: need at least 2 levels");
  const auto &jumps = s.C.jump_times();
  ConvergenceStudy study{s.name, {}, {}};
  TimeGrid grid = TimeGrid::with_step(s.horizon(), options.initial_h, jumps);
  for (int level = 0; level < options.levels; ++level) {
    SolveConfig cfg{grid, options.gamma};
    BVTrajectory x = catching_up(s.C, s.x0, cfg);
    ResidualReport report =
        integral_residual(x, default_reference_measure(x), s.C);
    ConvergenceRow row{level, grid.max_step(), report.R, report.variation,
                       std::nullopt};
    if (s.reference)
      row.sup_error = sup_error(x, s.reference);
    study.rows.push_back(row);
    if (options.refine)
      grid = grid.refined();
  }

  for (std::size_t j = 0; j < study.rows.size(); ++j) {
    const auto &row = study.rows[j];
    const std::string at_level = " at level " + std::to_string(row.level);
    if (row.sup_error && *row.sup_error > 2.0 * row.h + 1e-12)
      study.failures.push_back("sup error " + format_number(*row.sup_error) +
                               " exceeds 2h" + at_level);
    if (j == 0)
      continue;
    const auto &prev = study.rows[j - 1];
    if (!(row.h < prev.h))
      study.failures.push_back("grid step did not decrease" + at_level);
    const double r = std::abs(row.residual);
    if (r > options.residual_floor &&
        r > std::abs(prev.residual) / options.decrease_factor)
      study.failures.push_back("|R| = " + format_number(r) +
                               " did not decrease by the factor " +
                               format_number(options.decrease_factor) +
                               at_level);
  }
  return study;
}

StabilityStudy stability_study(const Scenario &s,
                               const StabilityOptions &options) {
  const std::size_t n_max = options.n_max;
  if (n_max < 2 || (n_max & (n_max - 1)) != 0)
    throw std::invalid_argument(
        "stability study: n_max must be a power of two >= 2");
  const double T = s.horizon();
  const double speed = s.C.speed_bound();
  const auto &jumps = s.C.jump_times();
  StabilityStudy study{s.name, {}, 0.0, Verdict::NotSolution, {}};

  std::size_t n0 = std::min(min_cells(s.C, options.gamma), n_max / 2);
  std::vector<BVTrajectory> solutions;
  for (std::size_t n = n0; n <= n_max; n *= 2) {
    TimeGrid grid = TimeGrid::uniform(T, n, jumps);
    MovingSet frozen = freeze(s.C, grid.times());
    BVTrajectory x = catching_up(frozen, s.x0, SolveConfig{grid, options.gamma});
    ReferenceMeasure nu = default_reference_measure(x);

    StabilityRow row{};
    row.n = n;
    row.h = grid.max_step();
    row.residual_true = integral_residual(x, nu, s.C).R;
    row.residual_frozen = integral_residual(x, nu, frozen).R;
    row.variation = variation(x);
    row.osc_bound = row.h * speed + 1e-9;
    const auto &ts = grid.times();
    for (std::size_t k = 0; k + 1 < ts.size(); ++k)
      for (int i = 0; i < 8; ++i) {
        double t = ts[k] + (ts[k + 1] - ts[k]) * i / 8.0;
        row.osc_defect = std::max(row.osc_defect, distance(at(s.C, t), x(t)));
      }
    row.osc_defect =
        std::max(row.osc_defect, distance(at(s.C, T), x.values().back()));
    study.rows.push_back(row);
    solutions.push_back(std::move(x));
  }
  for (std::size_t i = 0; i + 1 < solutions.size(); ++i)
    study.rows[i].cauchy = sup_distance(solutions[i], solutions[i + 1]);

  const BVTrajectory &top = solutions.back();
  double jump_total = 0.0;
  for (double j : jumps)
    jump_total += jump_amplitude(s.C, j, top.left_limit(j));
  study.variation_bound = 2.0 * (1.0 + T * speed + jump_total);

  for (const auto &row : study.rows) {
    const std::string at_n = " at n=" + std::to_string(row.n);
    if (!std::isfinite(row.variation) ||
        row.variation > study.variation_bound)
      study.failures.push_back("variation " + format_number(row.variation) +
                               " exceeds the bound " +
                               format_number(study.variation_bound) + at_n);
    if (row.osc_defect > row.osc_bound)
      study.failures.push_back("feasibility defect " +
                               format_number(row.osc_defect) +
                               " exceeds h * speed" + at_n);
  }
  const auto &last = study.rows.back();
  if (!(std::abs(last.residual_true) <= options.residual_tol))
    study.failures.push_back("|E_n| = " +
                             format_number(std::abs(last.residual_true)) +
                             " exceeds " + format_number(options.residual_tol) +
                             " at n=" + std::to_string(last.n));
  const auto &penultimate = study.rows[study.rows.size() - 2];
  if (!(*penultimate.cauchy <= options.cauchy_tol))
    study.failures.push_back("sup distance " +
                             format_number(*penultimate.cauchy) +
                             " between the top two levels exceeds " +
                             format_number(options.cauchy_tol));

  study.final_verdict =
      certify(top, default_reference_measure(top), s.C, kCertificateTol,
              options.gamma)
          .verdict;
  if (study.final_verdict != Verdict::Solution)
    study.failures.push_back("top-level trajectory does not certify against C");
  return study;
}

Vec random_feasible_point(const ProxSet &S, const Vec &around, double scale,
                          std::mt19937_64 &rng, SafetyFactor gamma) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec p = around;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p[i] += scale * normal(rng);
  const double limit = gamma.value() * S.rho();
  if (distance(S, p) < limit)
    return nearest_point(S, p);
  return project(S, around, gamma);
}

BVTrajectory random_admissible_trajectory(const Scenario &s,
                                          std::mt19937_64 &rng,
                                          SafetyFactor gamma) {
  const MovingSet &C = s.C;
  const double T = C.horizon();
  std::size_t lo = 4;
  if (C.rho() < kInfinity)
    lo = std::max<std::size_t>(
        lo, static_cast<std::size_t>(
                std::ceil(2.0 * T * C.speed_bound() / reach(C, gamma))));
  std::uniform_int_distribution<std::size_t> cells(lo, std::max<std::size_t>(lo, 64));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  TimeGrid grid = TimeGrid::uniform(T, cells(rng), C.jump_times());

  std::vector<Vec> values;
  values.reserve(grid.size());
  values.push_back(unit(rng) < 0.5
                       ? s.x0
                       : random_feasible_point(at(C, 0.0), s.x0, 0.2, rng, gamma));
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const ProxSet S = at(C, grid[k]);
    const Vec &prev = values.back();
    const double u = unit(rng);
    const double d = distance(S, prev);
    if (u < 0.4 && d < reach(C, gamma))
      values.push_back(d <= 1e-10 ? prev : nearest_point(S, prev));
    else if (u < 0.55 && d <= 1e-10)
      values.push_back(prev);
    else
      values.push_back(
          random_feasible_point(S, prev, 0.3 * unit(rng), rng, gamma));
  }
  return BVTrajectory(std::move(grid), std::move(values));
}

BVTrajectory random_feasible_test(const MovingSet &C, const BVTrajectory &x,
                                  double scale, std::mt19937_64 &rng,
                                  SafetyFactor gamma) {
  std::vector<Vec> values;
  values.reserve(x.grid().size());
  for (std::size_t k = 0; k < x.grid().size(); ++k)
    values.push_back(random_feasible_point(at(C, x.grid()[k]), x.value(k),
                                           scale, rng, gamma));
  return BVTrajectory(x.grid(), std::move(values));
}

} // namespace sweep

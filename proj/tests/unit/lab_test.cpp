#include "common/support.hpp"

#include "sweep/lab.hpp"

#include <gtest/gtest.h>

namespace sweep {
namespace {

using test::vec;

TEST(Scenarios, BuiltinFamilies) {
  std::vector<std::string> names;
  for (const Scenario &s : builtin_scenarios()) {
    names.push_back(s.name);
    EXPECT_FALSE(s.notes.empty()) << s.name;
    EXPECT_LE(distance(at(s.C, 0.0), s.x0), 1e-12) << s.name;
  }
  EXPECT_EQ(names, (std::vector<std::string>{"ramp", "jump", "sine-play",
                                             "hole", "disk", "crescent"}));
  EXPECT_EQ(find_scenario("SINE-PLAY").name, "sine-play");
  EXPECT_THROW(find_scenario("nope"), std::invalid_argument);
  EXPECT_EQ(find_scenario("crescent").C.rho(), 1.0);
}

TEST(Scenarios, ReferencesAreCertifiedOnTheirGrids) {
  // Sampled on a grid, the exact solutions coincide with the catching-up
  // output and certify against the freeze.
  for (const Scenario &s : builtin_scenarios()) {
    if (!s.reference)
      continue;
    const TimeGrid grid =
        TimeGrid::with_step(s.horizon(), 0.125, s.C.jump_times());
    std::vector<Vec> values;
    for (double t : grid.times())
      values.push_back(s.reference(t));
    const BVTrajectory x(grid, values);
    const MovingSet frozen = freeze(s.C, grid.times());
    const BVTrajectory solved = catching_up(frozen, s.x0, SolveConfig{grid});
    EXPECT_LE(sup_distance(x, solved), 1e-12) << s.name;
    EXPECT_EQ(certify(x, default_reference_measure(x), frozen, 1e-7).verdict,
              Verdict::Solution)
        << s.name;
  }
}

TEST(Convergence, RampFiveLevels) {
  const ConvergenceStudy study = convergence_study(find_scenario("ramp"));
  ASSERT_TRUE(study.ok()) << study.failures.front();
  ASSERT_EQ(study.rows.size(), 5u);
  for (std::size_t j = 0; j < study.rows.size(); ++j) {
    const ConvergenceRow &row = study.rows[j];
    EXPECT_LE(std::abs(row.residual), 1e-12);
    EXPECT_LE(*row.sup_error, 2.0 * row.h);
    if (j > 0) {
      EXPECT_DOUBLE_EQ(row.h, study.rows[j - 1].h / 2.0);
      EXPECT_LE(*row.sup_error, *study.rows[j - 1].sup_error);
    }
  }
}

TEST(Convergence, JumpIsExactAtEveryLevel) {
  const ConvergenceStudy study =
      convergence_study(find_scenario("jump"), {.levels = 4});
  ASSERT_TRUE(study.ok());
  for (const ConvergenceRow &row : study.rows)
    EXPECT_EQ(*row.sup_error, 0.0);
}

TEST(Convergence, HoleWithinTwoSteps) {
  const ConvergenceStudy study =
      convergence_study(find_scenario("hole"), {.levels = 4});
  ASSERT_TRUE(study.ok());
  for (const ConvergenceRow &row : study.rows)
    EXPECT_LE(*row.sup_error, 2.0 * row.h);
}

TEST(Convergence, FrozenGridFails) {
  ConvergenceOptions options;
  options.refine = false;
  const ConvergenceStudy study =
      convergence_study(find_scenario("ramp"), options);
  EXPECT_FALSE(study.ok());
  EXPECT_THROW(convergence_study(find_scenario("ramp"), {.levels = 1}),
               std::invalid_argument);
}

TEST(Stability, SinePlay) {
  const StabilityStudy study = stability_study(find_scenario("sine-play"));
  ASSERT_TRUE(study.ok()) << study.failures.front();
  EXPECT_EQ(study.rows.back().n, 256u);
  EXPECT_LE(std::abs(study.rows.back().residual_true), 1e-2);
  const auto &penultimate = study.rows[study.rows.size() - 2];
  ASSERT_TRUE(penultimate.cauchy.has_value());
  EXPECT_LE(*penultimate.cauchy, 1e-2);
  EXPECT_EQ(study.final_verdict, Verdict::Solution);
}

TEST(Stability, HoleVariationsStayBounded) {
  const StabilityStudy study =
      stability_study(find_scenario("hole"), {.n_max = 128});
  ASSERT_TRUE(study.ok()) << study.failures.front();
  EXPECT_DOUBLE_EQ(study.variation_bound, 4.0);
  for (const StabilityRow &row : study.rows) {
    EXPECT_LE(row.variation, study.variation_bound);
    EXPECT_LE(std::abs(row.residual_true), 1e-9);
    EXPECT_LE(row.osc_defect, row.osc_bound + 1e-12);
    if (row.cauchy)
      EXPECT_LE(*row.cauchy, row.h);
  }
  EXPECT_EQ(study.rows.front().n, 2u);
}

TEST(Stability, StaticSetHasZeroResidual) {
  const Scenario s{"static",
                   MovingSet::single(ProxSet::box(vec({0, 0}), vec({1, 1})),
                                     MotionPath::zero(2), 1.0),
                   vec({0.5, 0.5}),
                   {},
                   "fixed box"};
  const StabilityStudy study = stability_study(s, {.n_max = 16});
  ASSERT_TRUE(study.ok());
  for (const StabilityRow &row : study.rows) {
    EXPECT_EQ(row.residual_true, 0.0);
    EXPECT_EQ(row.residual_frozen, 0.0);
  }
  EXPECT_THROW(stability_study(s, {.n_max = 12}), std::invalid_argument);
}

TEST(RandomTrajectories, AreFeasibleAtGridTimes) {
  std::mt19937_64 rng(3);
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 50; ++i) {
      const BVTrajectory x = random_admissible_trajectory(s, rng);
      EXPECT_GE(x.grid().cells(), 4u);
      for (double j : s.C.jump_times())
        EXPECT_TRUE(x.grid().index_of(j).has_value());
      for (std::size_t k = 0; k < x.grid().size(); ++k)
        ASSERT_LE(distance(at(s.C, x.grid()[k]), x.value(k)), 1e-9) << s.name;
      const BVTrajectory y = random_feasible_test(s.C, x, 0.3, rng);
      for (std::size_t k = 0; k < y.grid().size(); ++k)
        ASSERT_LE(distance(at(s.C, y.grid()[k]), y.value(k)), 1e-9) << s.name;
    }
}

TEST(RandomTrajectories, AreReproducible) {
  const Scenario s = find_scenario("crescent");
  std::mt19937_64 a(99), b(99);
  for (int i = 0; i < 10; ++i) {
    const BVTrajectory x = random_admissible_trajectory(s, a);
    const BVTrajectory y = random_admissible_trajectory(s, b);
    EXPECT_EQ(x.grid().times(), y.grid().times());
    EXPECT_EQ(sup_distance(x, y), 0.0);
  }
}

TEST(DefaultReferenceMeasure, FallsBackToLebesgue) {
  const BVTrajectory still(TimeGrid({0, 1, 3}), {vec({1}), vec({1}), vec({1})});
  const ReferenceMeasure nu = default_reference_measure(still);
  EXPECT_TRUE(nu.atoms().empty());
  EXPECT_EQ(nu.lebesgue_weight(), 1.0);
  EXPECT_DOUBLE_EQ(nu.total_mass(), 3.0);
  const BVTrajectory moving(TimeGrid({0, 1}), {vec({1}), vec({-1})});
  EXPECT_EQ(default_reference_measure(moving).lebesgue_weight(), 0.0);
}

} // namespace
} // namespace sweep

#include "common/geometry_checks.hpp"
#include "common/support.hpp"

#include "sweep/errors.hpp"
#include "sweep/lab.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace sweep {
namespace {

using test::vec;

class GeometryProperties : public ::testing::TestWithParam<ProxSet::Kind> {};

TEST_P(GeometryProperties, HoldOnSeededSamples) {
  const test::GeometryCheckCounts counts =
      test::check_geometry(GetParam(), 2000, 20240611);
  EXPECT_GT(counts.samples, 1500);
  EXPECT_EQ(counts.failures(), 0) << counts.first_failure;
}

INSTANTIATE_TEST_SUITE_P(
    AllKinds, GeometryProperties, ::testing::ValuesIn(test::kAllKinds),
    [](const auto &info) { return to_string(info.param); });

TEST(GeometryProperties, TighterSafetyFactor) {
  const SafetyFactor gamma(0.5);
  for (ProxSet::Kind kind : test::kAllKinds) {
    const test::GeometryCheckCounts counts =
        test::check_geometry(kind, 500, 77, gamma);
    EXPECT_EQ(counts.failures(), 0) << counts.first_failure;
  }
}

TEST(ResidualProperties, SignAndLowerBound) {
  std::mt19937_64 rng(4242);
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 100; ++i) {
      const BVTrajectory x = random_admissible_trajectory(s, rng);
      const ReferenceMeasure nu = default_reference_measure(x);
      const ResidualReport r = integral_residual(x, nu, s.C);
      EXPECT_LE(r.R, 1e-12) << s.name;
      if (!r.unbounded()) {
        EXPECT_GE(r.R, r.lower_bound - 1e-9) << s.name;
      }
      for (const PointwiseEntry &e : r.pointwise) {
        EXPECT_LE(e.m, 0.0);
        if (std::isfinite(r.rho))
          EXPECT_GE(e.m, -0.5 * r.rho * e.norm_v - 1e-12);
      }
    }
}

TEST(ResidualProperties, TestFunctionsNeverUndercutR) {
  std::mt19937_64 rng(99);
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 60; ++i) {
      const BVTrajectory x = random_admissible_trajectory(s, rng);
      const ReferenceMeasure nu = default_reference_measure(x);
      const ResidualReport r = integral_residual(x, nu, s.C);
      if (r.unbounded())
        continue;
      for (int j = 0; j < 5; ++j) {
        const BVTrajectory y = random_feasible_test(s.C, x, 0.4, rng);
        EXPECT_GE(check_integral_inequality(x, y, nu, s.C, s.C.rho()),
                  r.R - 1e-9 * (1.0 + std::abs(r.R)))
            << s.name;
      }
    }
}

TEST(ResidualProperties, CertificateChecksAgree) {
  std::mt19937_64 rng(7);
  std::size_t solutions = 0, rejections = 0;
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 150; ++i) {
      const BVTrajectory x = random_admissible_trajectory(s, rng);
      Certificate c;
      ASSERT_NO_THROW(c = certify(x, default_reference_measure(x), s.C))
          << s.name;
      (c.verdict == Verdict::Solution ? solutions : rejections)++;
      for (const AtomCheck &a : c.atoms)
        EXPECT_LE(a.m, a.witness + 1e-12);
    }
  EXPECT_GT(solutions, 0u);
  EXPECT_GT(rejections, 0u);
}

TEST(ResidualProperties, ScalingTheMeasureKeepsR) {
  // R does not depend on the choice of nu dominating |dx|.
  std::mt19937_64 rng(13);
  const Scenario s = find_scenario("crescent");
  for (int i = 0; i < 50; ++i) {
    const BVTrajectory x = random_admissible_trajectory(s, rng);
    if (variation(x) == 0.0)
      continue;
    const ReferenceMeasure nu = canonical_reference_measure(x);
    std::vector<MassAtom> scaled;
    for (const MassAtom &a : nu.atoms())
      scaled.push_back({a.time, a.mass * test::uniform(0.5, 4.0, rng)});
    const ReferenceMeasure mu(scaled, 0.3, nu.horizon());
    const double r1 = integral_residual(x, nu, s.C).R;
    const double r2 = integral_residual(x, mu, s.C).R;
    EXPECT_NEAR(r1, r2, 1e-12 * (1.0 + std::abs(r1)));
  }
}

TEST(MeasureProperties, DensityReconstructsTrajectories) {
  std::mt19937_64 rng(21);
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 40; ++i) {
      const BVTrajectory x = random_admissible_trajectory(s, rng);
      if (variation(x) == 0.0)
        continue;
      const ReferenceMeasure nu = canonical_reference_measure(x, 0.5);
      const Density v = density(x, nu);
      EXPECT_NEAR(v.l1_norm(), variation(x), 1e-12 * (1.0 + variation(x)));
      const std::vector<Vec> back = reconstruct(x.value(0), v, x.grid());
      for (std::size_t k = 0; k < back.size(); ++k)
        EXPECT_LE((back[k] - x.value(k)).norm(), 1e-12 * (1.0 + variation(x)));
    }
}

TEST(MeasureProperties, CsvRoundTripIsExact) {
  std::mt19937_64 rng(8);
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 20; ++i) {
      const BVTrajectory x = random_admissible_trajectory(s, rng);
      std::stringstream buffer;
      write_trajectory_csv(buffer, x);
      const BVTrajectory y = read_trajectory_csv(buffer);
      EXPECT_EQ(y.grid().times(), x.grid().times());
      EXPECT_EQ(sup_distance(x, y), 0.0);
    }
}

TEST(SolverProperties, OutputCertifiesAgainstTheFreeze) {
  std::mt19937_64 rng(5);
  for (const Scenario &s : builtin_scenarios())
    for (int i = 0; i < 10; ++i) {
      const std::size_t cells =
          std::uniform_int_distribution<std::size_t>(8, 200)(rng);
      const TimeGrid grid =
          TimeGrid::uniform(s.horizon(), cells, s.C.jump_times());
      const MovingSet frozen = freeze(s.C, grid.times());
      const BVTrajectory x = catching_up(frozen, s.x0, SolveConfig{grid});
      EXPECT_EQ(certify(x, default_reference_measure(x), frozen).verdict,
                Verdict::Solution)
          << s.name << " with " << cells << " cells";
    }
}

} // namespace
} // namespace sweep

#pragma once

#include "common/support.hpp"

#include "sweep/geometry.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>

namespace sweep::test {

struct GeometryCheckCounts {
  int samples = 0;
  int idempotence = 0;
  int distance = 0;
  int lipschitz = 0;
  int prox_inequality = 0;
  std::string first_failure;

  int failures() const {
    return idempotence + distance + lipschitz + prox_inequality;
  }
};

/// Runs the four projection properties on `samples` random (set, point)
/// pairs of one kind, in dimensions 1 to 3:
///   - proj(proj(p)) = proj(p) and proj(p) lies in S,
///   - d(S, p) = |p - proj(p)| and no feasible point is closer,
///   - |proj(p) - proj(q)| <= |p - q| / (1 - gamma) on the enlargement,
///   - <zeta, x' - x> <= |zeta| / (2 rho) |x' - x|^2 for zeta = p - proj(p).
inline GeometryCheckCounts check_geometry(ProxSet::Kind kind, int samples,
                                          std::uint64_t seed,
                                          SafetyFactor gamma = {}) {
  std::mt19937_64 rng(seed);
  GeometryCheckCounts counts;
  auto fail = [&](int &counter, const ProxSet &S, const std::string &what) {
    if (counter++ == 0 && counts.first_failure.empty())
      counts.first_failure = what + " on " + S.describe();
  };
  for (int i = 0; i < samples; ++i) {
    // Kinds with no proper boundary in R^1 are still exercised there.
    const int dim = 1 + i % 3;
    if (kind == ProxSet::Kind::IntersectBall && dim == 1 && i % 2 == 0)
      continue;
    const ProxSet S = random_set(kind, dim, rng);
    const Vec p = random_query(S, rng, gamma.value());
    const Vec q = random_query(S, rng, gamma.value());
    const Vec z = project(S, random_query(S, rng, gamma.value()), gamma);
    ++counts.samples;

    const Vec y = project(S, p, gamma);
    const double scale = 1.0 + p.norm();
    if (!S.contains(y, 1e-10 * scale) ||
        (project(S, y, gamma) - y).norm() > 1e-10 * scale)
      fail(counts.idempotence, S, "idempotence");

    const double d = distance(S, p);
    if (std::abs(d - (p - y).norm()) > 1e-10 * scale ||
        (p - z).norm() < d - 1e-10 * scale)
      fail(counts.distance, S, "distance");

    const Vec yq = project(S, q, gamma);
    if ((y - yq).norm() > gamma.lipschitz() * (p - q).norm() + 1e-10 * scale)
      fail(counts.lipschitz, S, "lipschitz");

    const Vec zeta = p - y;
    const double lhs = zeta.dot(z - y);
    const double rhs = S.convex() ? 0.0
                                  : zeta.norm() / (2.0 * S.rho()) *
                                        (z - y).squaredNorm();
    if (lhs > rhs + 1e-9 * scale * (1.0 + zeta.norm()))
      fail(counts.prox_inequality, S, "prox inequality");
  }
  return counts;
}

} // namespace sweep::test

#pragma once

/// @file
/// Pointwise and integral variational residuals of an admissible trajectory,
/// the test-function inequality, and the solution certificate.

#include "sweep/dynamics.hpp"
#include "sweep/measure.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace sweep {

/// Default certificate tolerance, scaled by (1 + variation) in certify().
inline constexpr double kCertificateTol = 1e-7;

/// min over y in S of <v, y - x> + (||v|| / 2 rho) ||y - x||^2, clamped to
/// be nonpositive. Finite rho uses the closed form
///   (||v|| / 2 rho) (d(S, x - rho v/||v||)^2 - rho^2);
/// rho = +inf needs a convex S and returns support_min(S, v) - <v, x>, which
/// is -inf when the linear program is unbounded.
double pointwise_residual(const ProxSet &S, const Vec &x, const Vec &v,
                          double rho, double tol = kFeasibilityTol);

inline bool unbounded_below(double m) { return m == -kInfinity; }

struct PointwiseEntry {
  double time;
  std::size_t index;
  double mass;
  double norm_v;
  double m;
};

struct ResidualReport {
  /// One entry per atom of nu. The Lebesgue part contributes nothing since
  /// v = 0 there.
  std::vector<PointwiseEntry> pointwise;
  double R = 0.0;
  /// -(rho/2) * integral of ||v|| dnu; -inf for convex C with motion.
  double lower_bound = 0.0;
  double rho = kInfinity;
  double variation = 0.0;
  double worst_time = 0.0;
  double worst_m = 0.0;
  double feasibility_tol = kFeasibilityTol;

  bool unbounded() const { return unbounded_below(R); }
};

/// R = sum over atoms of m(t_k) * nu({t_k}) against the sets C(t_k).
/// Throws InfeasibleTrajectory if some x_k is farther than tol from C(t_k),
/// NotAbsolutelyContinuous if |dx| is not dominated by nu.
ResidualReport integral_residual(const BVTrajectory &x,
                                 const ReferenceMeasure &nu, const MovingSet &C,
                                 double tol = kFeasibilityTol);

/// L(y) = sum over atoms of [<v, y - x> + (||v|| / 2 rho) ||y - x||^2] * mass,
/// with y evaluated at the atom times. Throws InfeasibleTest if y leaves C at
/// an atom.
double check_integral_inequality(const BVTrajectory &x, const BVTrajectory &y,
                                 const ReferenceMeasure &nu,
                                 const MovingSet &C, double rho,
                                 double tol = kFeasibilityTol);

enum class Verdict { Solution, NotSolution };
std::string to_string(Verdict verdict);

/// Per-atom outcome of the two characterizations.
struct AtomCheck {
  double time;
  std::size_t index;
  double m;
  /// ||y - x|| for y = proj(C(t), x + s zeta), zeta = -v/||v||.
  double displacement;
  /// The residual integrand at y: an upper bound for m that vanishes iff
  /// y = x.
  double witness;
  bool residual_ok;
  bool normal_cone_ok;
};

struct Certificate {
  Verdict verdict = Verdict::Solution;
  ResidualReport report;
  std::vector<AtomCheck> atoms;
  /// Tolerance as given, and after scaling by (1 + variation).
  double certificate_tol = kCertificateTol;
  double scaled_tol = kCertificateTol;
  /// Atoms where exactly one check passed without a contradiction.
  std::size_t marginal_atoms = 0;
};

/// Runs the residual check (m >= -tol*(1+variation) at every atom) and the
/// normal-cone check, and returns Solution iff both pass everywhere.
///
/// The normal-cone check projects x_k + s zeta back onto C(t_k), with zeta
/// the unit direction of -v and s below the reach. The projection y equals
/// x_k exactly when zeta is a proximal normal; the check grades the miss by
/// the residual integrand at y, which is zero iff y = x_k and never below m.
/// It passes when that value is at least -tol*(1+variation). A normal-cone
/// failure at an atom whose residual passes, or a residual failure at an
/// atom whose projection does not move, throws CrossCheckMismatch.
Certificate certify(const BVTrajectory &x, const ReferenceMeasure &nu,
                    const MovingSet &C, double certificate_tol = kCertificateTol,
                    SafetyFactor gamma = {}, double tol = kFeasibilityTol);

/// Columns t,mass,norm_v,m,cumulative_R.
void write_residual_csv(std::ostream &out, const ResidualReport &report);

} // namespace sweep

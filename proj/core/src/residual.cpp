#include "sweep/residual.hpp"

#include "sweep/errors.hpp"
#include "sweep/text.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace sweep {

namespace {

void require_same_horizon(const BVTrajectory &x, const MovingSet &C) {
  const double T = C.horizon();
  if (std::abs(x.grid().horizon() - T) > 1e-12 * std::max(1.0, T))
    throw std::invalid_argument("trajectory horizon does not match the set");
  if (x.dim() != C.dim())
    throw std::invalid_argument("trajectory dimension does not match the set");
}

double inverse(double rho) { return rho == kInfinity ? 0.0 : 1.0 / rho; }

} // namespace

double pointwise_residual(const ProxSet &S, const Vec &x, const Vec &v,
                          double rho, double tol) {
  if (x.size() != S.dim() || v.size() != S.dim())
    throw std::invalid_argument("pointwise_residual: dimension mismatch");
  if (!(rho > 0.0))
    throw std::invalid_argument("pointwise_residual: rho must be positive");
  const double d = distance(S, x);
  if (d > tol)
    throw InfeasiblePoint(d);
  const double nv = v.norm();
  if (nv == 0.0)
    return 0.0;

  if (rho == kInfinity) {
    if (!S.convex())
      throw std::invalid_argument(
          "pointwise_residual: rho = inf requires a convex set");
    const double m = support_min(S, v) - v.dot(x);
    return std::min(m, 0.0);
  }

  const Vec a = x - (rho / nv) * v;
  const double da = distance(S, a);
  // (da - rho)(da + rho) avoids cancellation when da is close to rho.
  const double m = nv / (2.0 * rho) * ((da - rho) * (da + rho));
  return std::clamp(m, -0.5 * rho * nv, 0.0);
}

ResidualReport integral_residual(const BVTrajectory &x,
                                 const ReferenceMeasure &nu, const MovingSet &C,
                                 double tol) {
  require_same_horizon(x, C);
  for (std::size_t k = 0; k < x.grid().size(); ++k) {
    const double d = distance(at(C, x.grid()[k]), x.value(k));
    if (d > tol)
      throw InfeasibleTrajectory(k, x.grid()[k], d);
  }

  const Density v = density(x, nu);
  ResidualReport report;
  report.rho = C.rho();
  report.variation = variation(x);
  report.feasibility_tol = tol;
  bool first = true;
  for (const auto &atom : v.atoms) {
    const ProxSet S = at(C, atom.time);
    const double m =
        pointwise_residual(S, x.value(atom.index), atom.v, report.rho, tol);
    const double nv = atom.v.norm();
    report.pointwise.push_back(
        PointwiseEntry{atom.time, atom.index, atom.mass, nv, m});
    report.R += m * atom.mass;
    if (first || m < report.worst_m) {
      report.worst_m = m;
      report.worst_time = atom.time;
      first = false;
    }
  }
  const double l1 = v.l1_norm();
  report.lower_bound = l1 > 0.0 ? -0.5 * report.rho * l1 : 0.0;
  return report;
}

double check_integral_inequality(const BVTrajectory &x, const BVTrajectory &y,
                                 const ReferenceMeasure &nu,
                                 const MovingSet &C, double rho, double tol) {
  require_same_horizon(x, C);
  require_same_horizon(y, C);
  const Density v = density(x, nu);
  const double coeff = inverse(rho) / 2.0;
  double total = 0.0;
  for (const auto &atom : v.atoms) {
    const Vec yt = y(atom.time);
    const double d = distance(at(C, atom.time), yt);
    if (d > tol)
      throw InfeasibleTest(atom.time, d);
    const Vec diff = yt - x.value(atom.index);
    total += (atom.v.dot(diff) + coeff * atom.v.norm() * diff.squaredNorm()) *
             atom.mass;
  }
  return total;
}

std::string to_string(Verdict verdict) {
  return verdict == Verdict::Solution ? "Solution" : "NotSolution";
}

Certificate certify(const BVTrajectory &x, const ReferenceMeasure &nu,
                    const MovingSet &C, double certificate_tol,
                    SafetyFactor gamma, double tol) {
  if (!(certificate_tol > 0.0))
    throw std::invalid_argument("certify: tolerance must be positive");
  Certificate cert;
  cert.report = integral_residual(x, nu, C, tol);
  cert.certificate_tol = certificate_tol;
  cert.scaled_tol = certificate_tol * (1.0 + cert.report.variation);

  const double rho = cert.report.rho;
  for (const auto &entry : cert.report.pointwise) {
    if (entry.norm_v == 0.0)
      continue;
    const ProxSet S = at(C, entry.time);
    const Vec &xk = x.value(entry.index);
    const Vec delta = xk - x.value(entry.index - 1);
    const Vec zeta = -delta / delta.norm();

    // Probe length below the reach of both S and C, so that the projection
    // returns x exactly when zeta is a proximal normal.
    double s = S.convex() ? 1.0 : gamma.value() * S.rho();
    if (rho < kInfinity)
      s = std::min(s, gamma.value() * rho);
    const Vec y = nearest_point(S, xk + s * zeta);
    const Vec step = y - xk;
    // f(y) for the residual integrand; y is feasible, so m <= f(y).
    const double witness =
        entry.norm_v * (-zeta.dot(step) + 0.5 * inverse(rho) * step.squaredNorm());

    AtomCheck check{entry.time,    entry.index,
                    entry.m,       step.norm(),
                    witness,       entry.m >= -cert.scaled_tol,
                    witness >= -cert.scaled_tol};

    const double rounding = 1e-10 * (1.0 + xk.norm());
    if (check.residual_ok &&
        witness < entry.m - 1e-9 * (1.0 + std::abs(entry.m)))
      throw CrossCheckMismatch(entry.time, entry.m, check.displacement);
    if (!check.residual_ok && check.displacement <= rounding)
      throw CrossCheckMismatch(entry.time, entry.m, check.displacement);

    if (check.residual_ok != check.normal_cone_ok)
      ++cert.marginal_atoms;
    if (!check.residual_ok || !check.normal_cone_ok)
      cert.verdict = Verdict::NotSolution;
    cert.atoms.push_back(check);
  }
  return cert;
}

void write_residual_csv(std::ostream &out, const ResidualReport &report) {
  out << "t,mass,norm_v,m,cumulative_R\n";
  double running = 0.0;
  for (const auto &e : report.pointwise) {
    running += e.m * e.mass;
    out << format_number(e.time) << ',' << format_number(e.mass) << ','
        << format_number(e.norm_v) << ',' << format_number(e.m) << ','
        << format_number(running) << '\n';
  }
}

} // namespace sweep

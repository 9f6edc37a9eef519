#pragma once

/// @file
/// Right-continuous piecewise-constant BV trajectories on a time grid, their
/// differential measures, reference measures nu = atoms + lambda0 * Lebesgue
/// and densities dx/dnu.

#include "sweep/geometry.hpp"

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace sweep {

/// Strictly increasing times 0 = t_0 < ... < t_N = T, N >= 1.
class TimeGrid {
public:
  explicit TimeGrid(std::vector<double> times);

  /// `cells` equal cells on [0,T], with `extra` times merged in. Uniform
  /// points closer than 1e-12*T to an extra time are replaced by it.
  static TimeGrid uniform(double horizon, std::size_t cells,
                          std::span<const double> extra = {});
  /// Uniform grid with step at most h.
  static TimeGrid with_step(double horizon, double h,
                            std::span<const double> extra = {});

  /// Every cell split at its midpoint.
  TimeGrid refined() const;

  const std::vector<double> &times() const { return times_; }
  std::size_t size() const { return times_.size(); }
  std::size_t cells() const { return times_.size() - 1; }
  double horizon() const { return times_.back(); }
  double max_step() const;
  double operator[](std::size_t k) const { return times_[k]; }
  /// Largest k with t_k <= t (clamped to [0, N]).
  std::size_t cell_of(double t) const;
  std::optional<std::size_t> index_of(double t, double tol = 1e-12) const;

private:
  std::vector<double> times_;
};

/// x(t) = x_k for t in [t_k, t_{k+1}), x(T) = x_N.
class BVTrajectory {
public:
  BVTrajectory(TimeGrid grid, std::vector<Vec> values);

  const TimeGrid &grid() const { return grid_; }
  const std::vector<Vec> &values() const { return values_; }
  const Vec &value(std::size_t k) const { return values_[k]; }
  int dim() const { return static_cast<int>(values_.front().size()); }
  Vec operator()(double t) const;
  /// x(t-); equals x(0) at t = 0.
  Vec left_limit(double t) const;

private:
  TimeGrid grid_;
  std::vector<Vec> values_;
};

/// Atom of the vector differential measure dx at a grid time.
struct VectorAtom {
  double time;
  std::size_t index;
  Vec delta;
};

double variation(const BVTrajectory &x);

/// Nonzero increments (t_k, x_k - x_{k-1}); zero increments are omitted.
std::vector<VectorAtom> differential_measure(const BVTrajectory &x);

/// sup over [0,T] of ||x(t) - y(t)||, exact for piecewise-constant paths.
double sup_distance(const BVTrajectory &x, const BVTrajectory &y);

struct MassAtom {
  double time;
  double mass;
};

/// Positive Radon measure on [0,T]: point masses plus lambda0 * Lebesgue.
class ReferenceMeasure {
public:
  ReferenceMeasure(std::vector<MassAtom> atoms, double lebesgue_weight,
                   double horizon);

  const std::vector<MassAtom> &atoms() const { return atoms_; }
  double lebesgue_weight() const { return lebesgue_weight_; }
  double horizon() const { return horizon_; }
  double total_mass() const;
  /// Mass of the atom at t, if any.
  std::optional<double> atom_mass(double t, double tol = 1e-12) const;

private:
  std::vector<MassAtom> atoms_;
  double lebesgue_weight_;
  double horizon_;
};

/// nu = |dx| + lambda0 * Lebesgue. Throws DegenerateMeasure if that is the
/// zero measure.
ReferenceMeasure canonical_reference_measure(const BVTrajectory &x,
                                             double lebesgue_weight = 0.0);

struct DensityAtom {
  double time;
  std::size_t index; ///< grid index of the atom time
  double mass;
  Vec v;
};

/// dx/dnu: values at the atoms of nu; zero on the Lebesgue part.
struct Density {
  std::vector<DensityAtom> atoms;
  double lebesgue_weight = 0.0;

  /// integral of ||v|| dnu.
  double l1_norm() const;
};

/// Throws NotAbsolutelyContinuous if a nonzero increment has no nu-atom.
Density density(const BVTrajectory &x, const ReferenceMeasure &nu);

/// x(0) + sum over atoms up to t_k of v * mass, for every grid index k.
std::vector<Vec> reconstruct(const Vec &x0, const Density &v,
                             const TimeGrid &grid);

/// CSV with a leading comment line, header `t,x1,...,xd`, one row per grid
/// time. Values are printed with 17 significant digits.
void write_trajectory_csv(std::ostream &out, const BVTrajectory &x);
BVTrajectory read_trajectory_csv(std::istream &in);

} // namespace sweep

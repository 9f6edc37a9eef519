#pragma once

/// @file
/// Time-dependent moving sets t -> C(t) on [0,T], built from translated
/// ProxSet pieces with declared jump times.

#include "sweep/geometry.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace sweep {

/// A translation path t -> shift(t), stored as a sum of elementary terms.
/// A path with a single term is one of Constant, PiecewiseLinear or
/// Sinusoidal; sums are used for e.g. circular motion.
class MotionPath {
public:
  struct Constant {
    Vec shift;
  };
  struct Knot {
    double time;
    Vec shift;
  };
  /// Linear interpolation between knots; constant beyond the first and
  /// last knot.
  struct PiecewiseLinear {
    std::vector<Knot> knots;
  };
  /// amplitude * sin(frequency * t + phase) * direction, frequency in rad/s.
  struct Sinusoidal {
    double amplitude;
    double frequency;
    double phase;
    Vec direction;
  };
  using Term = std::variant<Constant, PiecewiseLinear, Sinusoidal>;

  static MotionPath constant(const Vec &shift);
  static MotionPath zero(int dim);
  static MotionPath piecewise_linear(std::vector<Knot> knots);
  static MotionPath sinusoidal(double amplitude, double frequency, double phase,
                               const Vec &direction);

  MotionPath operator+(const MotionPath &other) const;

  Vec operator()(double t) const;
  /// Upper bound on ||shift'(t)||.
  double speed_bound() const;
  int dim() const { return dim_; }
  const std::vector<Term> &terms() const { return terms_; }

private:
  MotionPath(std::vector<Term> terms, int dim)
      : terms_(std::move(terms)), dim_(dim) {}

  std::vector<Term> terms_;
  int dim_;
};

/// One piece of a moving set: C(t) = base + path(t) for t in [start, end).
/// The final piece also covers t = end; it may be degenerate
/// (start == end == T) to pin the terminal set.
struct Piece {
  double start;
  double end;
  ProxSet base;
  MotionPath path;
};

class MovingSet {
public:
  explicit MovingSet(std::vector<Piece> pieces);
  static MovingSet single(const ProxSet &base, const MotionPath &path,
                          double horizon);

  double horizon() const { return horizon_; }
  int dim() const { return dim_; }
  /// Uniform prox constant: the minimum over pieces.
  double rho() const { return rho_; }
  /// Piece boundaries where t -> C(t) is discontinuous.
  const std::vector<double> &jump_times() const { return jump_times_; }
  const std::vector<Piece> &pieces() const { return pieces_; }
  /// Index of the piece containing t (right-continuous convention).
  std::size_t piece_index(double t) const;
  /// max over pieces of the path speed bound.
  double speed_bound() const;
  bool is_jump_time(double t, double tol = 1e-12) const;

private:
  std::vector<Piece> pieces_;
  std::vector<double> jump_times_;
  double horizon_;
  double rho_;
  int dim_;
};

/// C(t) as a translated ProxSet. Throws OutOfHorizon for t outside [0,T].
ProxSet at(const MovingSet &C, double t);

/// ||path(t) - path(s)||, summed across continuous piece boundaries.
/// Throws CrossesJump if a jump time lies in (min(s,t), max(s,t)].
double hausdorff_bound(const MovingSet &C, double s, double t);

/// distance(C(t_jump), probe): how far a state sitting at probe must travel
/// when the set jumps at t_jump.
double jump_amplitude(const MovingSet &C, double t_jump, const Vec &probe);

/// The piecewise-constant-in-time freeze of C on the given times:
/// C_n(t) = C(t_k) for t in [t_k, t_{k+1}), and C_n(T) = C(T).
MovingSet freeze(const MovingSet &C, std::span<const double> times);

} // namespace sweep

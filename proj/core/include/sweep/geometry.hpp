#pragma once

/// @file
/// Exact prox-regular set primitives in R^d: distance, nearest point,
/// proximal normal cone membership and the ball-intersection combinator.

#include <Eigen/Core>

#include <limits>
#include <memory>
#include <string>
#include <variant>

namespace sweep {

using Vec = Eigen::VectorXd;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Default feasibility tolerance (state units).
inline constexpr double kFeasibilityTol = 1e-9;

/// Enlargement parameter gamma in (0,1). Projection onto a rho-prox-regular
/// set is only trusted on the open set {p : d(p,S) < gamma * rho}.
class SafetyFactor {
public:
  constexpr SafetyFactor() = default;
  explicit SafetyFactor(double gamma);

  constexpr double value() const { return gamma_; }
  /// (1 - gamma)^-1, the Lipschitz constant of the projection on the
  /// enlargement.
  double lipschitz() const { return 1.0 / (1.0 - gamma_); }

private:
  double gamma_ = 0.9;
};

/// A nonempty closed rho-uniformly prox-regular subset of R^d.
///
/// Values are immutable; copies share the nested base of an IntersectBall.
/// Translation is folded into the parameters of the shape, so a translated
/// set has the same kind as its base.
class ProxSet {
public:
  enum class Kind { Halfspace, Ball, Box, ComplementOfOpenBall, IntersectBall };

  /// {y : <normal, y> <= offset}, normal stored with unit length.
  struct Halfspace {
    Vec normal;
    double offset;
  };
  struct Ball {
    Vec center;
    double radius;
  };
  struct Box {
    Vec lower;
    Vec upper;
  };
  /// R^d minus the open ball B(center, radius).
  struct ComplementOfOpenBall {
    Vec center;
    double radius;
  };
  /// base ∩ closed ball B[center, radius].
  struct IntersectBall {
    std::shared_ptr<const ProxSet> base;
    Vec center;
    double radius;
  };

  static ProxSet halfspace(const Vec &normal, double offset);
  static ProxSet ball(const Vec &center, double radius);
  static ProxSet box(const Vec &lower, const Vec &upper);
  static ProxSet complement_of_open_ball(const Vec &center, double radius);
  /// base + shift. Keeps the prox constant of base.
  static ProxSet translate(const ProxSet &base, const Vec &shift);
  /// base ∩ B[center, radius]. Requires radius < rho(base) and
  /// base ∩ B(center, radius) nonempty; the result keeps rho(base).
  /// Nonconvex bases are limited to ComplementOfOpenBall.
  static ProxSet intersect_ball(const ProxSet &base, const Vec &center,
                                double radius);

  Kind kind() const;
  int dim() const;
  double rho() const { return rho_; }
  bool convex() const { return rho_ == kInfinity; }
  bool bounded() const;

  template <class Shape> const Shape &as() const {
    return std::get<Shape>(shape_);
  }

  ProxSet translated(const Vec &shift) const;
  bool contains(const Vec &p, double tol = kFeasibilityTol) const;
  std::string describe() const;

private:
  using Shape =
      std::variant<Halfspace, Ball, Box, ComplementOfOpenBall, IntersectBall>;

  ProxSet(Shape shape, double rho) : shape_(std::move(shape)), rho_(rho) {}

  Shape shape_;
  double rho_;
};

std::string to_string(ProxSet::Kind kind);

/// Structural equality of two sets up to an absolute parameter tolerance.
bool approx_equal(const ProxSet &a, const ProxSet &b, double tol = 1e-12);

/// inf over S of ||p - y||.
double distance(const ProxSet &S, const Vec &p);

/// A nearest point of S to p, with no reach check. Unique whenever
/// d(p,S) < rho(S); ties beyond the reach are broken deterministically.
Vec nearest_point(const ProxSet &S, const Vec &p);

/// The unique nearest point of S to p. Throws OutOfReach unless
/// d(p,S) < gamma * rho(S).
Vec project(const ProxSet &S, const Vec &p, SafetyFactor gamma = {});

/// ||project(S, x + s*zeta) - x|| with s = gamma*rho/max(||zeta||,1)
/// (s = 1 for convex S). Zero exactly when zeta is a proximal normal.
double normal_cone_displacement(const ProxSet &S, const Vec &x,
                                const Vec &zeta, SafetyFactor gamma = {});

/// Whether zeta lies in the proximal normal cone N^P(S; x), decided through
/// the projection characterization. Throws InfeasiblePoint if d(x,S) > tol.
bool normal_cone_contains(const ProxSet &S, const Vec &x, const Vec &zeta,
                          SafetyFactor gamma = {},
                          double tol = kFeasibilityTol);

/// The uniform prox-regularity constant; +inf for convex kinds.
double prox_constant(const ProxSet &S);

/// inf over y in S of <v, y>, possibly -inf. Only defined for convex S.
double support_min(const ProxSet &S, const Vec &v);

} // namespace sweep

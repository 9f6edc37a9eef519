#include "sweep/geometry.hpp"

#include "sweep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sweep {

namespace {

// Relative slack used when testing membership of computed candidates.
constexpr double kMembershipSlack = 1e-12;
constexpr int kBisectionSteps = 200;

void require_finite(const Vec &v, const char *what) {
  if (v.size() < 1)
    throw std::invalid_argument(std::string(what) + ": empty vector");
  if (!v.allFinite())
    throw std::invalid_argument(std::string(what) + ": non-finite entry");
}

void require_dim(const Vec &v, int dim, const char *what) {
  if (v.size() != dim)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

std::string format_vec(const Vec &v) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

// A unit vector orthogonal to the unit vector e (dimension >= 2).
Vec any_orthogonal(const Vec &e) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < e.size(); ++i)
    if (std::abs(e[i]) < std::abs(e[best]))
      best = i;
  Vec u = Vec::Unit(e.size(), best);
  u -= u.dot(e) * e;
  return u.normalized();
}

Vec nearest_ball(const Vec &center, double radius, const Vec &p) {
  Vec diff = p - center;
  double n = diff.norm();
  if (n <= radius)
    return p;
  return center + (radius / n) * diff;
}

Vec nearest_hole(const Vec &center, double radius, const Vec &p) {
  Vec diff = p - center;
  double n = diff.norm();
  if (n >= radius)
    return p;
  if (n == 0.0)
    return center + radius * Vec::Unit(p.size(), 0);
  return center + (radius / n) * diff;
}

// Nearest point of (R^d \ B(c,R)) ∩ B[a,r] by enumeration of the possible
// active sets: hole only, ball only, or the intersection sphere of both.
Vec nearest_hole_cap(const ProxSet::ComplementOfOpenBall &hole, const Vec &a,
                     double r, const Vec &p) {
  const Vec &c = hole.center;
  const double R = hole.radius;
  auto feasible = [&](const Vec &y) {
    return (y - c).norm() >= R * (1.0 - kMembershipSlack) &&
           (y - a).norm() <= r * (1.0 + kMembershipSlack);
  };

  std::vector<Vec> candidates;
  auto offer = [&](Vec y) {
    if (feasible(y))
      candidates.push_back(std::move(y));
  };
  offer(nearest_hole(c, R, p));
  offer(nearest_ball(a, r, p));

  const double D = (a - c).norm();
  if (p.size() == 1) {
    offer((c.array() - R).matrix());
    offer((c.array() + R).matrix());
    offer((a.array() - r).matrix());
    offer((a.array() + r).matrix());
  } else if (D > 0.0) {
    Vec e = (a - c) / D;
    double along = (D * D + R * R - r * r) / (2.0 * D);
    double h2 = R * R - along * along;
    if (h2 >= 0.0) {
      Vec mid = c + along * e;
      Vec u = (p - mid) - (p - mid).dot(e) * e;
      double un = u.norm();
      Vec dir = un > 1e-14 * (1.0 + p.norm()) ? Vec(u / un) : any_orthogonal(e);
      offer(mid + std::sqrt(h2) * dir);
    }
  }
  if (candidates.empty())
    throw std::logic_error("nearest_hole_cap: no feasible candidate");
  auto best = std::min_element(candidates.begin(), candidates.end(),
                               [&](const Vec &y1, const Vec &y2) {
                                 return (y1 - p).squaredNorm() <
                                        (y2 - p).squaredNorm();
                               });
  return *best;
}

// Nearest point of a convex base ∩ B[a,r]. With the ball constraint active,
// the minimizer is proj_base((1-t) p + t a) for the unique t in (0,1) where
// it reaches the sphere; ||proj_base(.) - a|| decreases along that segment.
Vec nearest_convex_cap(const ProxSet &base, const Vec &a, double r,
                       const Vec &p) {
  Vec y = nearest_point(base, p);
  if ((y - a).norm() <= r * (1.0 + kMembershipSlack))
    return y;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < kBisectionSteps && hi - lo > 0.0; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    Vec q = (1.0 - mid) * p + mid * a;
    if ((nearest_point(base, q) - a).norm() > r)
      lo = mid;
    else
      hi = mid;
  }
  return nearest_point(base, (1.0 - hi) * p + hi * a);
}

// inf over base ∩ B[a,r] of <v,y> for convex base, through the penalized
// problems min_{y in base} <v,y> + ||y-a||^2/(2s), solved by
// proj_base(a - s v). The ball is active at the s where that point reaches
// the sphere.
double support_min_convex_cap(const ProxSet &base, const Vec &a, double r,
                              const Vec &v) {
  auto point = [&](double s) { return nearest_point(base, a - s * v); };
  double lo = 0.0;
  double hi = 1.0;
  const double cap = 1e15 * (1.0 + r) / v.norm();
  while ((point(hi) - a).norm() <= r) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap)
      return v.dot(point(lo));
  }
  for (int i = 0; i < kBisectionSteps; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi)
      break;
    if ((point(mid) - a).norm() > r)
      hi = mid;
    else
      lo = mid;
  }
  return v.dot(point(lo));
}

} // namespace

SafetyFactor::SafetyFactor(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("safety factor gamma must lie in (0,1)");
}

ProxSet ProxSet::halfspace(const Vec &normal, double offset) {
  require_finite(normal, "halfspace normal");
  double n = normal.norm();
  if (n == 0.0 || !std::isfinite(offset))
    throw std::invalid_argument("halfspace: zero normal or non-finite offset");
  return ProxSet(Halfspace{normal / n, offset / n}, kInfinity);
}

ProxSet ProxSet::ball(const Vec &center, double radius) {
  require_finite(center, "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("ball: radius must be positive");
  return ProxSet(Ball{center, radius}, kInfinity);
}

ProxSet ProxSet::box(const Vec &lower, const Vec &upper) {
  require_finite(lower, "box lower");
  require_finite(upper, "box upper");
  require_dim(upper, static_cast<int>(lower.size()), "box");
  if ((lower.array() > upper.array()).any())
    throw std::invalid_argument("box: lower must not exceed upper");
  return ProxSet(Box{lower, upper}, kInfinity);
}

ProxSet ProxSet::complement_of_open_ball(const Vec &center, double radius) {
  require_finite(center, "complement center");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("complement of ball: radius must be positive");
  return ProxSet(ComplementOfOpenBall{center, radius}, radius);
}

ProxSet ProxSet::translate(const ProxSet &base, const Vec &shift) {
  return base.translated(shift);
}

ProxSet ProxSet::intersect_ball(const ProxSet &base, const Vec &center,
                                double radius) {
  require_finite(center, "intersect_ball center");
  require_dim(center, base.dim(), "intersect_ball");
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw std::invalid_argument("intersect_ball: radius must be positive");
  if (!(radius < base.rho()))
    throw std::invalid_argument(
        "intersect_ball: radius must be smaller than rho(base)");
  if (!base.convex() && base.kind() != Kind::ComplementOfOpenBall)
    throw std::invalid_argument(
        "intersect_ball: nonconvex base must be a complement of a ball");
  if (!(distance(base, center) < radius))
    throw std::invalid_argument(
        "intersect_ball: base does not meet the open ball");
  return ProxSet(
      IntersectBall{std::make_shared<const ProxSet>(base), center, radius},
      base.rho());
}

ProxSet::Kind ProxSet::kind() const {
  return static_cast<Kind>(shape_.index());
}

int ProxSet::dim() const {
  return std::visit(
      [](const auto &s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>)
          return static_cast<int>(s.normal.size());
        else if constexpr (std::is_same_v<T, Box>)
          return static_cast<int>(s.lower.size());
        else
          return static_cast<int>(s.center.size());
      },
      shape_);
}

bool ProxSet::bounded() const {
  switch (kind()) {
  case Kind::Ball:
  case Kind::Box:
  case Kind::IntersectBall:
    return true;
  default:
    return false;
  }
}

ProxSet ProxSet::translated(const Vec &shift) const {
  require_dim(shift, dim(), "translate");
  require_finite(shift, "translate shift");
  return std::visit(
      [&](const auto &s) -> ProxSet {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>)
          return ProxSet(Halfspace{s.normal, s.offset + s.normal.dot(shift)},
                         rho_);
        else if constexpr (std::is_same_v<T, Ball>)
          return ProxSet(Ball{s.center + shift, s.radius}, rho_);
        else if constexpr (std::is_same_v<T, Box>)
          return ProxSet(Box{s.lower + shift, s.upper + shift}, rho_);
        else if constexpr (std::is_same_v<T, ComplementOfOpenBall>)
          return ProxSet(ComplementOfOpenBall{s.center + shift, s.radius},
                         rho_);
        else
          return ProxSet(
              IntersectBall{std::make_shared<const ProxSet>(
                                s.base->translated(shift)),
                            s.center + shift, s.radius},
              rho_);
      },
      shape_);
}

bool ProxSet::contains(const Vec &p, double tol) const {
  return distance(*this, p) <= tol;
}

std::string ProxSet::describe() const {
  std::ostringstream out;
  out.precision(17);
  std::visit(
      [&](const auto &s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Halfspace>)
          out << "Halfspace(normal=" << format_vec(s.normal)
              << ", offset=" << s.offset << ")";
        else if constexpr (std::is_same_v<T, Ball>)
          out << "Ball(center=" << format_vec(s.center)
              << ", radius=" << s.radius << ")";
        else if constexpr (std::is_same_v<T, Box>)
          out << "Box(lower=" << format_vec(s.lower)
              << ", upper=" << format_vec(s.upper) << ")";
        else if constexpr (std::is_same_v<T, ComplementOfOpenBall>)
          out << "ComplementOfOpenBall(center=" << format_vec(s.center)
              << ", radius=" << s.radius << ")";
        else
          out << "IntersectBall(base=" << s.base->describe()
              << ", center=" << format_vec(s.center)
              << ", radius=" << s.radius << ")";
      },
      shape_);
  return out.str();
}

std::string to_string(ProxSet::Kind kind) {
  switch (kind) {
  case ProxSet::Kind::Halfspace:
    return "halfspace";
  case ProxSet::Kind::Ball:
    return "ball";
  case ProxSet::Kind::Box:
    return "box";
  case ProxSet::Kind::ComplementOfOpenBall:
    return "complement_ball";
  case ProxSet::Kind::IntersectBall:
    return "intersect_ball";
  }
  return "unknown";
}

bool approx_equal(const ProxSet &a, const ProxSet &b, double tol) {
  if (a.kind() != b.kind() || a.dim() != b.dim())
    return false;
  auto close = [tol](const Vec &u, const Vec &w) {
    return (u - w).lpNorm<Eigen::Infinity>() <= tol;
  };
  auto near = [tol](double u, double w) { return std::abs(u - w) <= tol; };
  using K = ProxSet::Kind;
  switch (a.kind()) {
  case K::Halfspace: {
    auto &x = a.as<ProxSet::Halfspace>();
    auto &y = b.as<ProxSet::Halfspace>();
    return close(x.normal, y.normal) && near(x.offset, y.offset);
  }
  case K::Ball: {
    auto &x = a.as<ProxSet::Ball>();
    auto &y = b.as<ProxSet::Ball>();
    return close(x.center, y.center) && near(x.radius, y.radius);
  }
  case K::Box: {
    auto &x = a.as<ProxSet::Box>();
    auto &y = b.as<ProxSet::Box>();
    return close(x.lower, y.lower) && close(x.upper, y.upper);
  }
  case K::ComplementOfOpenBall: {
    auto &x = a.as<ProxSet::ComplementOfOpenBall>();
    auto &y = b.as<ProxSet::ComplementOfOpenBall>();
    return close(x.center, y.center) && near(x.radius, y.radius);
  }
  case K::IntersectBall: {
    auto &x = a.as<ProxSet::IntersectBall>();
    auto &y = b.as<ProxSet::IntersectBall>();
    return close(x.center, y.center) && near(x.radius, y.radius) &&
           approx_equal(*x.base, *y.base, tol);
  }
  }
  return false;
}

double distance(const ProxSet &S, const Vec &p) {
  require_dim(p, S.dim(), "distance");
  using K = ProxSet::Kind;
  switch (S.kind()) {
  case K::Halfspace: {
    auto &h = S.as<ProxSet::Halfspace>();
    return std::max(0.0, h.normal.dot(p) - h.offset);
  }
  case K::Ball: {
    auto &b = S.as<ProxSet::Ball>();
    return std::max(0.0, (p - b.center).norm() - b.radius);
  }
  case K::Box: {
    auto &b = S.as<ProxSet::Box>();
    return (p - p.cwiseMax(b.lower).cwiseMin(b.upper)).norm();
  }
  case K::ComplementOfOpenBall: {
    auto &h = S.as<ProxSet::ComplementOfOpenBall>();
    return std::max(0.0, h.radius - (p - h.center).norm());
  }
  case K::IntersectBall:
    return (nearest_point(S, p) - p).norm();
  }
  return 0.0;
}

Vec nearest_point(const ProxSet &S, const Vec &p) {
  require_dim(p, S.dim(), "nearest_point");
  using K = ProxSet::Kind;
  switch (S.kind()) {
  case K::Halfspace: {
    auto &h = S.as<ProxSet::Halfspace>();
    double excess = h.normal.dot(p) - h.offset;
    if (excess <= 0.0)
      return p;
    return p - excess * h.normal;
  }
  case K::Ball: {
    auto &b = S.as<ProxSet::Ball>();
    return nearest_ball(b.center, b.radius, p);
  }
  case K::Box: {
    auto &b = S.as<ProxSet::Box>();
    return p.cwiseMax(b.lower).cwiseMin(b.upper);
  }
  case K::ComplementOfOpenBall: {
    auto &h = S.as<ProxSet::ComplementOfOpenBall>();
    return nearest_hole(h.center, h.radius, p);
  }
  case K::IntersectBall: {
    auto &ib = S.as<ProxSet::IntersectBall>();
    if (ib.base->convex())
      return nearest_convex_cap(*ib.base, ib.center, ib.radius, p);
    return nearest_hole_cap(ib.base->as<ProxSet::ComplementOfOpenBall>(),
                            ib.center, ib.radius, p);
  }
  }
  return p;
}

Vec project(const ProxSet &S, const Vec &p, SafetyFactor gamma) {
  double d = distance(S, p);
  double reach = gamma.value() * S.rho();
  if (!(d < reach))
    throw OutOfReach(d, reach);
  return nearest_point(S, p);
}

double normal_cone_displacement(const ProxSet &S, const Vec &x,
                                const Vec &zeta, SafetyFactor gamma) {
  require_dim(zeta, S.dim(), "normal_cone_displacement");
  double zn = zeta.norm();
  if (zn == 0.0)
    return 0.0;
  double step =
      S.convex() ? 1.0 : gamma.value() * S.rho() / std::max(zn, 1.0);
  return (nearest_point(S, x + step * zeta) - x).norm();
}

bool normal_cone_contains(const ProxSet &S, const Vec &x, const Vec &zeta,
                          SafetyFactor gamma, double tol) {
  double d = distance(S, x);
  if (d > tol)
    throw InfeasiblePoint(d);
  return normal_cone_displacement(S, x, zeta, gamma) <= tol;
}

double prox_constant(const ProxSet &S) { return S.rho(); }

double support_min(const ProxSet &S, const Vec &v) {
  require_dim(v, S.dim(), "support_min");
  if (!S.convex())
    throw std::logic_error("support_min: set is not convex");
  if (v.squaredNorm() == 0.0)
    return 0.0;
  using K = ProxSet::Kind;
  switch (S.kind()) {
  case K::Halfspace: {
    // Bounded below only when v is a nonpositive multiple of the normal.
    auto &h = S.as<ProxSet::Halfspace>();
    double lambda = -h.normal.dot(v);
    if (lambda >= 0.0 && (v + lambda * h.normal).norm() <= 1e-12 * v.norm())
      return -lambda * h.offset;
    return -kInfinity;
  }
  case K::Ball: {
    auto &b = S.as<ProxSet::Ball>();
    return v.dot(b.center) - b.radius * v.norm();
  }
  case K::Box: {
    auto &b = S.as<ProxSet::Box>();
    return v.cwiseProduct(b.lower).cwiseMin(v.cwiseProduct(b.upper)).sum();
  }
  case K::IntersectBall: {
    auto &ib = S.as<ProxSet::IntersectBall>();
    return support_min_convex_cap(*ib.base, ib.center, ib.radius, v);
  }
  default:
    break;
  }
  throw std::logic_error("support_min: unsupported kind");
}

} // namespace sweep

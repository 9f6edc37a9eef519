#pragma once

#include "sweep/geometry.hpp"

#include <array>
#include <cmath>
#include <initializer_list>
#include <random>
#include <string>

namespace sweep::test {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs)
    v[i++] = x;
  return v;
}

inline Vec gaussian(int dim, double scale, std::mt19937_64 &rng) {
  std::normal_distribution<double> n(0.0, scale);
  Vec v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = n(rng);
  return v;
}

inline Vec unit(int dim, std::mt19937_64 &rng) {
  Vec v = gaussian(dim, 1.0, rng);
  while (v.norm() < 1e-3)
    v = gaussian(dim, 1.0, rng);
  return v / v.norm();
}

inline double uniform(double lo, double hi, std::mt19937_64 &rng) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline constexpr std::array<ProxSet::Kind, 5> kAllKinds{
    ProxSet::Kind::Halfspace, ProxSet::Kind::Ball, ProxSet::Kind::Box,
    ProxSet::Kind::ComplementOfOpenBall, ProxSet::Kind::IntersectBall};

/// A random set of the given kind in R^dim, centered within a few units of
/// the origin. IntersectBall alternates between a hole and a box base.
inline ProxSet random_set(ProxSet::Kind kind, int dim, std::mt19937_64 &rng) {
  const Vec c = gaussian(dim, 1.0, rng);
  switch (kind) {
  case ProxSet::Kind::Halfspace:
    return ProxSet::halfspace(unit(dim, rng), uniform(-1.0, 1.0, rng));
  case ProxSet::Kind::Ball:
    return ProxSet::ball(c, uniform(0.3, 2.0, rng));
  case ProxSet::Kind::Box: {
    Vec size(dim);
    for (int i = 0; i < dim; ++i)
      size[i] = uniform(0.1, 2.0, rng);
    return ProxSet::box(c, c + size);
  }
  case ProxSet::Kind::ComplementOfOpenBall:
    return ProxSet::complement_of_open_ball(c, uniform(0.5, 2.0, rng));
  case ProxSet::Kind::IntersectBall:
    if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
      const double R = uniform(0.5, 2.0, rng);
      const double r = uniform(0.2, 0.8, rng) * R;
      const Vec a = c + unit(dim, rng) * (R + uniform(-0.5, 0.5, rng) * r);
      return ProxSet::intersect_ball(
          ProxSet::complement_of_open_ball(c, R), a, r);
    } else {
      Vec size(dim);
      for (int i = 0; i < dim; ++i)
        size[i] = uniform(0.2, 2.0, rng);
      Vec a(dim);
      for (int i = 0; i < dim; ++i)
        a[i] = c[i] + uniform(0.0, size[i], rng);
      return ProxSet::intersect_ball(ProxSet::box(c, c + size), a,
                                     uniform(0.2, 1.5, rng));
    }
  }
  return ProxSet::ball(c, 1.0);
}

/// A point near S whose distance to S is below gamma * rho when S is not
/// convex.
inline Vec random_query(const ProxSet &S, std::mt19937_64 &rng,
                        double gamma = 0.9) {
  for (;;) {
    Vec p;
    switch (S.kind()) {
    case ProxSet::Kind::Halfspace: {
      const auto &h = S.as<ProxSet::Halfspace>();
      p = h.normal * h.offset + gaussian(S.dim(), 1.5, rng);
      break;
    }
    case ProxSet::Kind::Ball:
      p = S.as<ProxSet::Ball>().center +
          gaussian(S.dim(), S.as<ProxSet::Ball>().radius, rng);
      break;
    case ProxSet::Kind::Box: {
      const auto &b = S.as<ProxSet::Box>();
      p = 0.5 * (b.lower + b.upper) + gaussian(S.dim(), 1.0, rng);
      break;
    }
    case ProxSet::Kind::ComplementOfOpenBall:
      p = S.as<ProxSet::ComplementOfOpenBall>().center +
          gaussian(S.dim(), S.as<ProxSet::ComplementOfOpenBall>().radius, rng);
      break;
    case ProxSet::Kind::IntersectBall:
      p = S.as<ProxSet::IntersectBall>().center +
          gaussian(S.dim(), S.as<ProxSet::IntersectBall>().radius, rng);
      break;
    }
    if (S.convex() || distance(S, p) < gamma * S.rho())
      return p;
  }
}

} // namespace sweep::test

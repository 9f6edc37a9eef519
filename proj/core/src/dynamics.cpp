#include "sweep/dynamics.hpp"

#include "sweep/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sweep {

namespace {

constexpr double kJumpSetTol = 1e-12;

Vec eval_term(const MotionPath::Term &term, double t, int dim) {
  return std::visit(
      [&](const auto &s) -> Vec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MotionPath::Constant>) {
          return s.shift;
        } else if constexpr (std::is_same_v<T, MotionPath::PiecewiseLinear>) {
          const auto &k = s.knots;
          if (t <= k.front().time)
            return k.front().shift;
          if (t >= k.back().time)
            return k.back().shift;
          auto it = std::upper_bound(
              k.begin(), k.end(), t,
              [](double value, const MotionPath::Knot &knot) {
                return value < knot.time;
              });
          const auto &right = *it;
          const auto &left = *(it - 1);
          double w = (t - left.time) / (right.time - left.time);
          return (1.0 - w) * left.shift + w * right.shift;
        } else {
          (void)dim;
          return s.amplitude * std::sin(s.frequency * t + s.phase) *
                 s.direction;
        }
      },
      term);
}

double term_speed(const MotionPath::Term &term) {
  return std::visit(
      [](const auto &s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MotionPath::Constant>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, MotionPath::PiecewiseLinear>) {
          double best = 0.0;
          for (std::size_t i = 1; i < s.knots.size(); ++i)
            best = std::max(best, (s.knots[i].shift - s.knots[i - 1].shift)
                                          .norm() /
                                      (s.knots[i].time - s.knots[i - 1].time));
          return best;
        } else {
          return std::abs(s.amplitude * s.frequency) * s.direction.norm();
        }
      },
      term);
}

} // namespace

MotionPath MotionPath::constant(const Vec &shift) {
  if (shift.size() < 1 || !shift.allFinite())
    throw std::invalid_argument("constant path: invalid shift");
  return MotionPath({Constant{shift}}, static_cast<int>(shift.size()));
}

MotionPath MotionPath::zero(int dim) { return constant(Vec::Zero(dim)); }

MotionPath MotionPath::piecewise_linear(std::vector<Knot> knots) {
  if (knots.empty())
    throw std::invalid_argument("piecewise linear path: no knots");
  const auto dim = knots.front().shift.size();
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (knots[i].shift.size() != dim || !knots[i].shift.allFinite() ||
        !std::isfinite(knots[i].time))
      throw std::invalid_argument("piecewise linear path: invalid knot");
    if (i > 0 && !(knots[i].time > knots[i - 1].time))
      throw std::invalid_argument(
          "piecewise linear path: knot times must increase strictly");
  }
  return MotionPath({PiecewiseLinear{std::move(knots)}}, static_cast<int>(dim));
}

MotionPath MotionPath::sinusoidal(double amplitude, double frequency,
                                  double phase, const Vec &direction) {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency) ||
      !std::isfinite(phase) || direction.size() < 1 || !direction.allFinite())
    throw std::invalid_argument("sinusoidal path: invalid parameters");
  return MotionPath({Sinusoidal{amplitude, frequency, phase, direction}},
                    static_cast<int>(direction.size()));
}

MotionPath MotionPath::operator+(const MotionPath &other) const {
  if (other.dim_ != dim_)
    throw std::invalid_argument("motion path sum: dimension mismatch");
  std::vector<Term> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return MotionPath(std::move(terms), dim_);
}

Vec MotionPath::operator()(double t) const {
  Vec out = Vec::Zero(dim_);
  for (const auto &term : terms_)
    out += eval_term(term, t, dim_);
  return out;
}

double MotionPath::speed_bound() const {
  double total = 0.0;
  for (const auto &term : terms_)
    total += term_speed(term);
  return total;
}

MovingSet::MovingSet(std::vector<Piece> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty())
    throw std::invalid_argument("moving set: no pieces");
  dim_ = pieces_.front().base.dim();
  if (pieces_.front().start != 0.0)
    throw std::invalid_argument("moving set: first piece must start at 0");
  rho_ = kInfinity;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto &p = pieces_[i];
    const bool last = i + 1 == pieces_.size();
    if (p.base.dim() != dim_ || p.path.dim() != dim_)
      throw std::invalid_argument("moving set: dimension mismatch in piece " +
                                  std::to_string(i));
    if (!std::isfinite(p.start) || !std::isfinite(p.end) ||
        !(p.end > p.start || (last && i > 0 && p.end == p.start)))
      throw std::invalid_argument("moving set: empty or reversed piece " +
                                  std::to_string(i));
    if (i > 0 && p.start != pieces_[i - 1].end)
      throw std::invalid_argument("moving set: pieces must be contiguous");
    rho_ = std::min(rho_, prox_constant(p.base));
  }
  horizon_ = pieces_.back().end;

  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const auto &left = pieces_[i];
    const auto &right = pieces_[i + 1];
    const double b = left.end;
    ProxSet before = left.base.translated(left.path(b));
    ProxSet after = right.base.translated(right.path(b));
    if (!approx_equal(before, after, kJumpSetTol))
      jump_times_.push_back(b);
  }
}

MovingSet MovingSet::single(const ProxSet &base, const MotionPath &path,
                            double horizon) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("moving set: horizon must be positive");
  return MovingSet({Piece{0.0, horizon, base, path}});
}

std::size_t MovingSet::piece_index(double t) const {
  if (!(t >= 0.0 && t <= horizon_))
    throw OutOfHorizon(t);
  for (std::size_t i = pieces_.size(); i-- > 0;)
    if (pieces_[i].start <= t)
      return i;
  return 0;
}

double MovingSet::speed_bound() const {
  double best = 0.0;
  for (const auto &p : pieces_)
    best = std::max(best, p.path.speed_bound());
  return best;
}

bool MovingSet::is_jump_time(double t, double tol) const {
  return std::any_of(jump_times_.begin(), jump_times_.end(),
                     [&](double j) { return std::abs(j - t) <= tol; });
}

ProxSet at(const MovingSet &C, double t) {
  const Piece &p = C.pieces()[C.piece_index(t)];
  return p.base.translated(p.path(t));
}

double hausdorff_bound(const MovingSet &C, double s, double t) {
  if (s > t)
    std::swap(s, t);
  C.piece_index(s);
  C.piece_index(t);
  for (double j : C.jump_times())
    if (s < j && j <= t)
      throw CrossesJump(j);
  double total = 0.0;
  for (const auto &p : C.pieces()) {
    double lo = std::max(s, p.start);
    double hi = std::min(t, p.end);
    if (hi > lo)
      total += (p.path(hi) - p.path(lo)).norm();
  }
  return total;
}

double jump_amplitude(const MovingSet &C, double t_jump, const Vec &probe) {
  if (!C.is_jump_time(t_jump))
    throw std::invalid_argument("jump_amplitude: not a jump time");
  return distance(at(C, t_jump), probe);
}

MovingSet freeze(const MovingSet &C, std::span<const double> times) {
  if (times.size() < 2 || times.front() != 0.0 ||
      times.back() != C.horizon())
    throw std::invalid_argument("freeze: times must span [0,T]");
  std::vector<Piece> pieces;
  pieces.reserve(times.size());
  const auto zero = MotionPath::zero(C.dim());
  for (std::size_t k = 0; k + 1 < times.size(); ++k)
    pieces.push_back(Piece{times[k], times[k + 1], at(C, times[k]), zero});
  pieces.push_back(
      Piece{times.back(), times.back(), at(C, times.back()), zero});
  return MovingSet(std::move(pieces));
}

} // namespace sweep

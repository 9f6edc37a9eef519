#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sweep {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The query point is at distance >= gamma * rho from the set, so the
/// nearest point is not guaranteed to be unique.
class OutOfReach : public Error {
public:
  OutOfReach(double distance, double reach)
      : Error("point out of prox reach: distance " + std::to_string(distance) +
              " >= " + std::to_string(reach)),
        distance_(distance), reach_(reach) {}
  double distance() const { return distance_; }
  double reach() const { return reach_; }

private:
  double distance_;
  double reach_;
};

class InfeasiblePoint : public Error {
public:
  explicit InfeasiblePoint(double distance)
      : Error("point is not feasible: distance to set " +
              std::to_string(distance)),
        distance_(distance) {}
  double distance() const { return distance_; }

private:
  double distance_;
};

class OutOfHorizon : public Error {
public:
  explicit OutOfHorizon(double t)
      : Error("time " + std::to_string(t) + " outside the horizon"), t_(t) {}
  double time() const { return t_; }

private:
  double t_;
};

class CrossesJump : public Error {
public:
  explicit CrossesJump(double jump)
      : Error("interval straddles the jump at t=" + std::to_string(jump)),
        jump_(jump) {}
  double jump_time() const { return jump_; }

private:
  double jump_;
};

class DegenerateMeasure : public Error {
public:
  DegenerateMeasure()
      : Error("reference measure is zero: constant trajectory and no "
              "Lebesgue part") {}
};

class NotAbsolutelyContinuous : public Error {
public:
  explicit NotAbsolutelyContinuous(double t)
      : Error("differential measure has an atom at t=" + std::to_string(t) +
              " that the reference measure does not charge"),
        t_(t) {}
  double time() const { return t_; }

private:
  double t_;
};

/// Raised by the catching-up scheme when the step from grid index k to k+1
/// leaves the gamma * rho enlargement of the next set.
class StepOutOfReach : public Error {
public:
  StepOutOfReach(std::size_t step, double time, double distance, double reach)
      : Error("step out of prox reach at step " + std::to_string(step) +
              " (t=" + std::to_string(time) + "): distance " +
              std::to_string(distance) + " >= " + std::to_string(reach)),
        step_(step), time_(time), distance_(distance), reach_(reach) {}
  std::size_t step() const { return step_; }
  double time() const { return time_; }
  double distance() const { return distance_; }
  double reach() const { return reach_; }

private:
  std::size_t step_;
  double time_;
  double distance_;
  double reach_;
};

class InfeasibleTrajectory : public Error {
public:
  InfeasibleTrajectory(std::size_t index, double time, double distance)
      : Error("trajectory infeasible at t=" + std::to_string(time) +
              " (grid index " + std::to_string(index) + ", distance " +
              std::to_string(distance) + ")"),
        index_(index), time_(time) {}
  std::size_t index() const { return index_; }
  double time() const { return time_; }

private:
  std::size_t index_;
  double time_;
};

class InfeasibleTest : public Error {
public:
  InfeasibleTest(double time, double distance)
      : Error("test trajectory infeasible at t=" + std::to_string(time) +
              " (distance " + std::to_string(distance) + ")"),
        time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

/// The residual check and the normal-cone check of a certificate disagree.
/// Both characterize the same solutions, so this indicates a geometry bug.
class CrossCheckMismatch : public Error {
public:
  CrossCheckMismatch(double time, double m, double displacement)
      : Error("certificate cross-check mismatch at t=" + std::to_string(time) +
              ": pointwise residual " + std::to_string(m) +
              ", normal-cone displacement " + std::to_string(displacement)),
        time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed CSV or numeric input.
class FormatError : public Error {
public:
  using Error::Error;
};

} // namespace sweep

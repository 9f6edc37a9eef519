#include "sweep/measure.hpp"

#include "sweep/errors.hpp"
#include "sweep/text.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace sweep {

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.size() < 2)
    throw std::invalid_argument("time grid: need at least two times");
  if (times_.front() != 0.0)
    throw std::invalid_argument("time grid: must start at 0");
  for (std::size_t k = 1; k < times_.size(); ++k)
    if (!(times_[k] > times_[k - 1]) || !std::isfinite(times_[k]))
      throw std::invalid_argument("time grid: times must increase strictly");
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t cells,
                           std::span<const double> extra) {
  if (!(horizon > 0.0) || cells == 0)
    throw std::invalid_argument("time grid: invalid horizon or cell count");
  std::vector<double> times(cells + 1);
  for (std::size_t k = 0; k <= cells; ++k)
    times[k] = horizon * static_cast<double>(k) / static_cast<double>(cells);
  times.back() = horizon;
  const double snap = 1e-12 * horizon;
  for (double e : extra) {
    if (!(e >= 0.0 && e <= horizon))
      throw std::invalid_argument("time grid: extra time outside [0,T]");
    auto it = std::lower_bound(times.begin(), times.end(), e);
    bool snapped = false;
    for (auto cand : {it, it == times.begin() ? it : it - 1}) {
      if (cand != times.end() && std::abs(*cand - e) <= snap) {
        if (*cand != 0.0 && *cand != horizon)
          *cand = e;
        snapped = true;
        break;
      }
    }
    if (!snapped)
      times.insert(it, e);
  }
  return TimeGrid(std::move(times));
}

TimeGrid TimeGrid::with_step(double horizon, double h,
                             std::span<const double> extra) {
  if (!(h > 0.0))
    throw std::invalid_argument("time grid: step must be positive");
  auto cells = static_cast<std::size_t>(std::ceil(horizon / h - 1e-9));
  return uniform(horizon, std::max<std::size_t>(cells, 1), extra);
}

TimeGrid TimeGrid::refined() const {
  std::vector<double> times;
  times.reserve(2 * times_.size() - 1);
  for (std::size_t k = 0; k + 1 < times_.size(); ++k) {
    times.push_back(times_[k]);
    times.push_back(0.5 * (times_[k] + times_[k + 1]));
  }
  times.push_back(times_.back());
  return TimeGrid(std::move(times));
}

double TimeGrid::max_step() const {
  double best = 0.0;
  for (std::size_t k = 1; k < times_.size(); ++k)
    best = std::max(best, times_[k] - times_[k - 1]);
  return best;
}

std::size_t TimeGrid::cell_of(double t) const {
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin())
    return 0;
  return static_cast<std::size_t>(it - times_.begin()) - 1;
}

std::optional<std::size_t> TimeGrid::index_of(double t, double tol) const {
  auto it = std::lower_bound(times_.begin(), times_.end(), t - tol);
  if (it != times_.end() && std::abs(*it - t) <= tol)
    return static_cast<std::size_t>(it - times_.begin());
  return std::nullopt;
}

BVTrajectory::BVTrajectory(TimeGrid grid, std::vector<Vec> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("trajectory: one value per grid time needed");
  const auto d = values_.front().size();
  if (d < 1)
    throw std::invalid_argument("trajectory: empty state");
  for (const auto &v : values_)
    if (v.size() != d || !v.allFinite())
      throw std::invalid_argument("trajectory: invalid value");
}

Vec BVTrajectory::operator()(double t) const {
  return values_[grid_.cell_of(t)];
}

Vec BVTrajectory::left_limit(double t) const {
  const auto &ts = grid_.times();
  auto it = std::lower_bound(ts.begin(), ts.end(), t);
  if (it == ts.begin())
    return values_.front();
  return values_[static_cast<std::size_t>(it - ts.begin()) - 1];
}

double variation(const BVTrajectory &x) {
  double total = 0.0;
  for (std::size_t k = 1; k < x.values().size(); ++k)
    total += (x.value(k) - x.value(k - 1)).norm();
  return total;
}

std::vector<VectorAtom> differential_measure(const BVTrajectory &x) {
  std::vector<VectorAtom> atoms;
  for (std::size_t k = 1; k < x.values().size(); ++k) {
    Vec delta = x.value(k) - x.value(k - 1);
    if (delta.squaredNorm() > 0.0)
      atoms.push_back(VectorAtom{x.grid()[k], k, std::move(delta)});
  }
  return atoms;
}

double sup_distance(const BVTrajectory &x, const BVTrajectory &y) {
  if (x.dim() != y.dim() || x.grid().horizon() != y.grid().horizon())
    throw std::invalid_argument("sup_distance: incompatible trajectories");
  std::vector<double> times;
  std::merge(x.grid().times().begin(), x.grid().times().end(),
             y.grid().times().begin(), y.grid().times().end(),
             std::back_inserter(times));
  double best = 0.0;
  for (double t : times)
    best = std::max(best, (x(t) - y(t)).norm());
  return best;
}

ReferenceMeasure::ReferenceMeasure(std::vector<MassAtom> atoms,
                                   double lebesgue_weight, double horizon)
    : atoms_(std::move(atoms)), lebesgue_weight_(lebesgue_weight),
      horizon_(horizon) {
  if (!(horizon > 0.0))
    throw std::invalid_argument("reference measure: horizon must be positive");
  if (!(lebesgue_weight >= 0.0) || !std::isfinite(lebesgue_weight))
    throw std::invalid_argument(
        "reference measure: Lebesgue weight must be nonnegative");
  for (const auto &a : atoms_)
    if (!(a.mass > 0.0) || !std::isfinite(a.mass) ||
        !(a.time >= 0.0 && a.time <= horizon))
      throw std::invalid_argument("reference measure: invalid atom");
  std::sort(atoms_.begin(), atoms_.end(),
            [](const MassAtom &a, const MassAtom &b) { return a.time < b.time; });
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].time == atoms_[i - 1].time)
      throw std::invalid_argument("reference measure: duplicate atom time");
}

double ReferenceMeasure::total_mass() const {
  double total = lebesgue_weight_ * horizon_;
  for (const auto &a : atoms_)
    total += a.mass;
  return total;
}

std::optional<double> ReferenceMeasure::atom_mass(double t, double tol) const {
  auto it = std::lower_bound(
      atoms_.begin(), atoms_.end(), t - tol,
      [](const MassAtom &a, double value) { return a.time < value; });
  if (it != atoms_.end() && std::abs(it->time - t) <= tol)
    return it->mass;
  return std::nullopt;
}

ReferenceMeasure canonical_reference_measure(const BVTrajectory &x,
                                             double lebesgue_weight) {
  std::vector<MassAtom> atoms;
  for (const auto &a : differential_measure(x))
    atoms.push_back(MassAtom{a.time, a.delta.norm()});
  if (atoms.empty() && lebesgue_weight == 0.0)
    throw DegenerateMeasure();
  return ReferenceMeasure(std::move(atoms), lebesgue_weight,
                          x.grid().horizon());
}

double Density::l1_norm() const {
  double total = 0.0;
  for (const auto &a : atoms)
    total += a.v.norm() * a.mass;
  return total;
}

Density density(const BVTrajectory &x, const ReferenceMeasure &nu) {
  if (nu.horizon() != x.grid().horizon())
    throw std::invalid_argument("density: horizon mismatch");
  const auto dx = differential_measure(x);
  for (const auto &a : dx)
    if (!nu.atom_mass(a.time))
      throw NotAbsolutelyContinuous(a.time);

  Density out;
  out.lebesgue_weight = nu.lebesgue_weight();
  auto next = dx.begin();
  for (const auto &atom : nu.atoms()) {
    auto index = x.grid().index_of(atom.time);
    if (!index)
      throw std::invalid_argument("density: reference atom off the grid");
    while (next != dx.end() && next->index < *index)
      ++next;
    Vec v = Vec::Zero(x.dim());
    if (next != dx.end() && next->index == *index)
      v = next->delta / atom.mass;
    out.atoms.push_back(DensityAtom{atom.time, *index, atom.mass, std::move(v)});
  }
  return out;
}

std::vector<Vec> reconstruct(const Vec &x0, const Density &v,
                             const TimeGrid &grid) {
  std::vector<Vec> out(grid.size(), x0);
  Vec running = x0;
  auto atom = v.atoms.begin();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    while (atom != v.atoms.end() && atom->index == k) {
      running += atom->v * atom->mass;
      ++atom;
    }
    out[k] = running;
  }
  return out;
}

void write_trajectory_csv(std::ostream &out, const BVTrajectory &x) {
  out << "# right-continuous piecewise-constant trajectory: x(t) = x_k on "
         "[t_k, t_{k+1})\n";
  out << 't';
  for (int i = 1; i <= x.dim(); ++i)
    out << ",x" << i;
  out << '\n';
  for (std::size_t k = 0; k < x.grid().size(); ++k) {
    out << format_number(x.grid()[k]);
    for (int i = 0; i < x.dim(); ++i)
      out << ',' << format_number(x.value(k)[i]);
    out << '\n';
  }
}

BVTrajectory read_trajectory_csv(std::istream &in) {
  std::string line;
  std::size_t columns = 0;
  std::vector<double> times;
  std::vector<Vec> values;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto text = trim(line);
    if (text.empty() || text.front() == '#')
      continue;
    auto fields = split(text, ',');
    if (columns == 0) {
      if (fields.size() < 2 || fields[0] != "t")
        throw FormatError("trajectory csv: header must be t,x1,...,xd");
      for (std::size_t i = 1; i < fields.size(); ++i)
        if (fields[i] != "x" + std::to_string(i))
          throw FormatError("trajectory csv: unexpected column '" +
                            std::string(fields[i]) + "'");
      columns = fields.size();
      continue;
    }
    if (fields.size() != columns)
      throw FormatError("trajectory csv: wrong field count on line " +
                        std::to_string(line_no));
    times.push_back(parse_number(fields[0]));
    Vec v(static_cast<Eigen::Index>(columns - 1));
    for (std::size_t i = 1; i < columns; ++i)
      v[static_cast<Eigen::Index>(i - 1)] = parse_number(fields[i]);
    values.push_back(std::move(v));
  }
  if (columns == 0)
    throw FormatError("trajectory csv: missing header");
  try {
    return BVTrajectory(TimeGrid(std::move(times)), std::move(values));
  } catch (const std::invalid_argument &e) {
    throw FormatError(std::string("trajectory csv: ") + e.what());
  }
}

} // namespace sweep

#include "config.hpp"

#include "sweep/errors.hpp"
#include "sweep/text.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace sweep::cli {

namespace {

struct Entry {
  std::string key;
  std::string value;
  int line;
};

using Section = std::vector<Entry>;

const std::set<std::string> kTopKeys = {
    "scenario",        "dimension",          "horizon",
    "x0",              "grid.h",             "grid.times",
    "solver.gamma",    "solver.projection_tol", "solver.max_refinements",
    "solver.target_residual", "seed",        "converge.refine",
    "converge.initial_h"};

const std::set<std::string> kPieceKeys = {
    "start",  "end",        "kind",       "normal",     "offset",
    "center", "radius",     "lower",      "upper",      "cap.center",
    "cap.radius", "path.constant", "path.knot", "path.sin"};

const std::set<std::string> kRepeatable = {"path.constant", "path.knot",
                                           "path.sin"};

[[noreturn]] void fail(int line, const std::string &message) {
  throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

class SectionView {
public:
  SectionView(const Section &entries, int header_line, std::string what)
      : entries_(entries), header_line_(header_line), what_(std::move(what)) {}

  const Entry *find(const std::string &key) const {
    for (const auto &e : entries_)
      if (e.key == key)
        return &e;
    return nullptr;
  }

  const Entry &require(const std::string &key) const {
    if (const Entry *e = find(key))
      return *e;
    fail(header_line_, what_ + " is missing the key '" + key + "'");
  }

  std::vector<const Entry *> all(const std::string &key) const {
    std::vector<const Entry *> out;
    for (const auto &e : entries_)
      if (e.key == key)
        out.push_back(&e);
    return out;
  }

  const Section &entries() const { return entries_; }

private:
  const Section &entries_;
  int header_line_;
  std::string what_;
};

double number(const Entry &e) {
  try {
    return parse_number(e.value);
  } catch (const FormatError &) {
    fail(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
  }
}

std::vector<double> numbers(const Entry &e) {
  try {
    return parse_numbers(e.value);
  } catch (const FormatError &) {
    fail(e.line, "'" + e.key + "' expects numbers, got '" + e.value + "'");
  }
}

Vec vector_of(const Entry &e, int dim) {
  auto values = numbers(e);
  if (static_cast<int>(values.size()) != dim)
    fail(e.line, "'" + e.key + "' expects " + std::to_string(dim) +
                     " numbers, got " + std::to_string(values.size()));
  return Eigen::Map<const Vec>(values.data(), dim);
}

long long integer(const Entry &e) {
  long long value = 0;
  const char *first = e.value.data();
  const char *last = first + e.value.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    fail(e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
  return value;
}

bool boolean(const Entry &e) {
  if (e.value == "true")
    return true;
  if (e.value == "false")
    return false;
  fail(e.line, "'" + e.key + "' expects true or false");
}

ProxSet build_shape(const SectionView &piece, int dim) {
  const Entry &kind = piece.require("kind");
  std::set<std::string> expected;
  ProxSet shape = [&]() -> ProxSet {
    if (kind.value == "halfspace") {
      expected = {"normal", "offset"};
      return ProxSet::halfspace(vector_of(piece.require("normal"), dim),
                                number(piece.require("offset")));
    }
    if (kind.value == "ball" || kind.value == "complement_ball") {
      expected = {"center", "radius"};
      Vec c = vector_of(piece.require("center"), dim);
      double r = number(piece.require("radius"));
      return kind.value == "ball" ? ProxSet::ball(c, r)
                                  : ProxSet::complement_of_open_ball(c, r);
    }
    if (kind.value == "box") {
      expected = {"lower", "upper"};
      return ProxSet::box(vector_of(piece.require("lower"), dim),
                          vector_of(piece.require("upper"), dim));
    }
    fail(kind.line, "unknown set kind '" + kind.value + "'");
  }();
  for (const auto &e : piece.entries()) {
    static const std::set<std::string> shape_keys = {
        "normal", "offset", "center", "radius", "lower", "upper"};
    if (shape_keys.count(e.key) && !expected.count(e.key))
      fail(e.line, "'" + e.key + "' does not apply to kind " + kind.value);
  }

  const Entry *cap_center = piece.find("cap.center");
  const Entry *cap_radius = piece.find("cap.radius");
  if (!cap_center != !cap_radius)
    fail((cap_center ? cap_center : cap_radius)->line,
         "cap.center and cap.radius must be given together");
  if (cap_center)
    shape = ProxSet::intersect_ball(shape, vector_of(*cap_center, dim),
                                    number(*cap_radius));
  return shape;
}

MotionPath build_path(const SectionView &piece, int dim) {
  std::optional<MotionPath> path;
  auto add = [&](MotionPath term) {
    path = path ? *path + term : std::move(term);
  };
  for (const Entry *e : piece.all("path.constant"))
    add(MotionPath::constant(vector_of(*e, dim)));

  auto knots = piece.all("path.knot");
  if (!knots.empty()) {
    std::vector<MotionPath::Knot> list;
    for (const Entry *e : knots) {
      auto values = numbers(*e);
      if (static_cast<int>(values.size()) != dim + 1)
        fail(e->line, "path.knot expects a time and " + std::to_string(dim) +
                          " coordinates");
      list.push_back({values[0], Eigen::Map<const Vec>(values.data() + 1, dim)});
    }
    add(MotionPath::piecewise_linear(std::move(list)));
  }

  for (const Entry *e : piece.all("path.sin")) {
    auto values = numbers(*e);
    if (static_cast<int>(values.size()) != dim + 3)
      fail(e->line, "path.sin expects amplitude, frequency, phase and " +
                        std::to_string(dim) + " direction coordinates");
    add(MotionPath::sinusoidal(values[0], values[1], values[2],
                               Eigen::Map<const Vec>(values.data() + 3, dim)));
  }
  return path ? *path : MotionPath::zero(dim);
}

} // namespace

TimeGrid Config::solve_grid() const {
  if (grid)
    return *grid;
  return TimeGrid::with_step(scenario.horizon(), default_h,
                             scenario.C.jump_times());
}

SolveConfig Config::solve_config() const {
  return SolveConfig{solve_grid(), gamma, projection_tol, max_refinements};
}

Config parse_config(std::string_view text) {
  Section top;
  std::vector<std::pair<int, Section>> pieces;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    if (line.front() == '[') {
      if (line != "[piece]")
        fail(line_no, "unknown section " + std::string(line));
      pieces.emplace_back(line_no, Section{});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      fail(line_no, "expected 'key = value'");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    if (key.empty() || value.empty())
      fail(line_no, "expected 'key = value'");
    Section &section = pieces.empty() ? top : pieces.back().second;
    const auto &allowed = pieces.empty() ? kTopKeys : kPieceKeys;
    if (!allowed.count(key))
      fail(line_no, "unknown key '" + key + "'" +
                        (pieces.empty() ? "" : " in [piece]"));
    if (!kRepeatable.count(key))
      for (const auto &e : section)
        if (e.key == key)
          fail(line_no, "duplicate key '" + key + "'");
    section.push_back(Entry{key, value, line_no});
  }

  SectionView root(top, 1, "config");
  std::optional<std::string> builtin;
  std::optional<Scenario> scenario;
  try {
    if (const Entry *name = root.find("scenario")) {
      for (const char *key : {"dimension", "horizon", "x0"})
        if (const Entry *e = root.find(key))
          fail(e->line, std::string("'") + key +
                            "' cannot be combined with a built-in scenario");
      if (!pieces.empty())
        fail(pieces.front().first,
             "[piece] cannot be combined with a built-in scenario");
      try {
        scenario = find_scenario(name->value);
      } catch (const std::invalid_argument &e) {
        fail(name->line, e.what());
      }
      builtin = scenario->name;
    } else {
      const long long dim = integer(root.require("dimension"));
      if (dim < 1 || dim > 1000)
        fail(root.require("dimension").line, "dimension must be positive");
      const int d = static_cast<int>(dim);
      const double horizon = number(root.require("horizon"));
      const Vec x0 = vector_of(root.require("x0"), d);
      if (pieces.empty())
        fail(line_no, "at least one [piece] section is required");
      std::vector<Piece> list;
      for (const auto &[header, entries] : pieces) {
        SectionView piece(entries, header, "[piece] at line " +
                                               std::to_string(header));
        try {
          list.push_back(Piece{number(piece.require("start")),
                               number(piece.require("end")),
                               build_shape(piece, d), build_path(piece, d)});
        } catch (const std::invalid_argument &e) {
          fail(header, e.what());
        }
      }
      MovingSet C(std::move(list));
      if (C.horizon() != horizon)
        fail(root.require("horizon").line,
             "the last piece must end at the horizon");
      scenario = Scenario{"custom", std::move(C), x0, {}, ""};
    }
  } catch (const std::invalid_argument &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  Config cfg(builtin, std::move(*scenario));
  const double T = cfg.scenario.horizon();
  if (const Entry *e = root.find("grid.h")) {
    cfg.default_h = number(*e);
    if (!(cfg.default_h > 0.0))
      fail(e->line, "grid.h must be positive");
  }
  if (const Entry *e = root.find("grid.times")) {
    if (root.find("grid.h"))
      fail(e->line, "grid.h and grid.times are exclusive");
    try {
      cfg.grid = TimeGrid(numbers(*e));
    } catch (const std::invalid_argument &ex) {
      fail(e->line, ex.what());
    }
    if (cfg.grid->horizon() != T)
      fail(e->line, "grid.times must end at the horizon");
    for (double j : cfg.scenario.C.jump_times())
      if (!cfg.grid->index_of(j))
        fail(e->line, "grid.times misses the jump at t=" + format_number(j));
  }
  if (const Entry *e = root.find("solver.gamma")) {
    try {
      cfg.gamma = SafetyFactor(number(*e));
    } catch (const std::invalid_argument &ex) {
      fail(e->line, ex.what());
    }
  }
  if (const Entry *e = root.find("solver.projection_tol")) {
    cfg.projection_tol = number(*e);
    if (!(cfg.projection_tol > 0.0))
      fail(e->line, "solver.projection_tol must be positive");
  }
  if (const Entry *e = root.find("solver.max_refinements")) {
    long long v = integer(*e);
    if (v < 0 || v > 30)
      fail(e->line, "solver.max_refinements must be in [0, 30]");
    cfg.max_refinements = static_cast<int>(v);
  }
  if (const Entry *e = root.find("solver.target_residual")) {
    cfg.target_residual = number(*e);
    if (!(cfg.target_residual > 0.0))
      fail(e->line, "solver.target_residual must be positive");
  }
  if (const Entry *e = root.find("seed")) {
    long long v = integer(*e);
    if (v < 0)
      fail(e->line, "seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(v);
  }
  if (const Entry *e = root.find("converge.refine"))
    cfg.converge_refine = boolean(*e);
  if (const Entry *e = root.find("converge.initial_h")) {
    cfg.converge_initial_h = number(*e);
    if (!(cfg.converge_initial_h > 0.0))
      fail(e->line, "converge.initial_h must be positive");
  }
  return cfg;
}

Config load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

} // namespace sweep::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

namespace sweep::cli {

enum ExitCode : int {
  kOk = 0,
  kNotSolution = 1,
  kStepOutOfReach = 2,
  kInvalidInput = 3,
  kStudyFailed = 4,
  kBudgetExhausted = 5,
};

struct Options {
  std::filesystem::path out = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  int levels = 5;
  std::size_t nmax = 256;
};

// Each command writes its artifacts under opts.out, prints a short summary on
// `log` and one-line diagnostics on `err`, and returns the exit status.

/// trajectory.csv, refinement.csv.
int cmd_solve(const std::filesystem::path &config, const Options &opts,
              std::ostream &log, std::ostream &err);
/// certificate.json, residual.csv.
int cmd_certify(const std::filesystem::path &config,
                const std::filesystem::path &trajectory, const Options &opts,
                std::ostream &log, std::ostream &err);
/// convergence.csv, convergence.json.
int cmd_converge(const std::filesystem::path &config, const Options &opts,
                 std::ostream &log, std::ostream &err);
/// stability.csv, stability.json.
int cmd_stability(const std::filesystem::path &config, const Options &opts,
                  std::ostream &log, std::ostream &err);
int cmd_list_scenarios(std::ostream &log);

} // namespace sweep::cli

#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char **argv) {
  using namespace sweep::cli;
  CLI::App app{"Sweeping-process toolkit: catching-up solver, residual "
               "certificates and refinement studies"};
  app.require_subcommand(1);

  Options opts;
  std::string config;
  std::string trajectory;
  std::uint64_t seed = 0;
  double tol = 0.0;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", config, "Scenario config file")->required();
    cmd->add_option("--out", opts.out, "Output directory")
        ->capture_default_str();
  };

  auto *solve = app.add_subcommand("solve", "Run the catching-up scheme");
  add_common(solve);

  auto *cert = app.add_subcommand("certify", "Certify a trajectory CSV");
  add_common(cert);
  cert->add_option("trajectory", trajectory, "Trajectory CSV")->required();
  auto *seed_opt =
      cert->add_option("--seed", seed, "Seed for random test functions");
  auto *tol_opt = cert->add_option("--tol", tol, "Certificate tolerance")
                      ->check(CLI::PositiveNumber);

  auto *converge = app.add_subcommand("converge", "Grid refinement study");
  add_common(converge);
  converge->add_option("--levels", opts.levels, "Number of grid levels")
      ->check(CLI::Range(2, 20))
      ->capture_default_str();

  auto *stability = app.add_subcommand("stability", "Freeze stability study");
  add_common(stability);
  stability->add_option("--nmax", opts.nmax, "Largest mesh count n")
      ->check(CLI::Range(2, 1 << 16))
      ->capture_default_str();

  auto *list = app.add_subcommand("list-scenarios", "List built-in families");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }
  if (*seed_opt)
    opts.seed = seed;
  if (*tol_opt)
    opts.tol = tol;

  if (*solve)
    return cmd_solve(config, opts, std::cout, std::cerr);
  if (*cert)
    return cmd_certify(config, trajectory, opts, std::cout, std::cerr);
  if (*converge)
    return cmd_converge(config, opts, std::cout, std::cerr);
  if (*stability)
    return cmd_stability(config, opts, std::cout, std::cerr);
  if (*list)
    return cmd_list_scenarios(std::cout);
  return kInvalidInput;
}

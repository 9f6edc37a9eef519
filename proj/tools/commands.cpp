#include "commands.hpp"

#include "config.hpp"

#include "sweep/errors.hpp"
#include "sweep/text.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <ostream>

namespace sweep::cli {

namespace {

using Json = nlohmann::ordered_json;

Json number(double value) {
  if (std::isfinite(value))
    return value;
  return format_number(value);
}

std::ofstream open_output(const std::filesystem::path &dir,
                          const std::string &name) {
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out)
    throw ConfigError("cannot write " + (dir / name).string());
  return out;
}

void write_json(const std::filesystem::path &dir, const std::string &name,
                const Json &doc) {
  open_output(dir, name) << doc.dump(2) << '\n';
}

std::string describe(const Vec &v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + format_number(v[i]);
  return out + ")";
}

/// Runs `body`, mapping library errors to exit codes.
template <class Body>
int guarded(std::ostream &err, Body &&body) {
  try {
    return body();
  } catch (const ConfigError &e) {
    err << "config error: " << e.what() << '\n';
  } catch (const FormatError &e) {
    err << "format error: " << e.what() << '\n';
  } catch (const StepOutOfReach &e) {
    err << "error: " << e.what() << '\n';
    return kStepOutOfReach;
  } catch (const Error &e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::filesystem::filesystem_error &e) {
    err << "error: " << e.what() << '\n';
  }
  return kInvalidInput;
}

/// y_k = proj(C(t_k), x_{k-1}): the catching-up step from the left limit.
BVTrajectory catching_up_test(const MovingSet &C, const BVTrajectory &x,
                              SafetyFactor gamma) {
  std::vector<Vec> values{x.value(0)};
  const double reach = gamma.value() * C.rho();
  for (std::size_t k = 1; k < x.grid().size(); ++k) {
    const ProxSet S = at(C, x.grid()[k]);
    const Vec &left = x.value(k - 1);
    values.push_back(distance(S, left) < reach ? nearest_point(S, left)
                                               : x.value(k));
  }
  return BVTrajectory(x.grid(), std::move(values));
}

} // namespace

int cmd_solve(const std::filesystem::path &config, const Options &opts,
              std::ostream &log, std::ostream &err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config);
    const Scenario &s = cfg.scenario;
    int status = kOk;
    RefinementResult result = [&] {
      try {
        return refine_until(s.C, s.x0, cfg.solve_config(), cfg.target_residual,
                            s.reference);
      } catch (const BudgetExhausted &e) {
        err << "warning: " << e.what() << '\n';
        status = kBudgetExhausted;
        return e.best();
      }
    }();
    {
      auto out = open_output(opts.out, "trajectory.csv");
      write_trajectory_csv(out, result.trajectory);
    }
    {
      auto out = open_output(opts.out, "refinement.csv");
      write_refinement_csv(out, result.log);
    }
    const auto &last = result.log.back();
    log << "solve " << s.name << ": " << result.trajectory.grid().size()
        << " grid points after " << last.level << " refinements, x(T) = "
        << describe(result.trajectory.values().back())
        << ", R = " << format_number(last.residual) << '\n';
    return status;
  });
}

int cmd_certify(const std::filesystem::path &config,
                const std::filesystem::path &trajectory, const Options &opts,
                std::ostream &log, std::ostream &err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config);
    const MovingSet &C = cfg.scenario.C;
    std::ifstream in(trajectory);
    if (!in)
      throw FormatError("cannot read trajectory " + trajectory.string());
    const BVTrajectory x = read_trajectory_csv(in);

    const ReferenceMeasure nu = default_reference_measure(x);
    const double tol = opts.tol.value_or(kCertificateTol);
    const Certificate cert = certify(x, nu, C, tol, cfg.gamma);
    const ResidualReport &report = cert.report;

    // Test-function witness: L(y) is bounded below by R for feasible y.
    const std::uint64_t seed = opts.seed.value_or(cfg.seed);
    std::mt19937_64 rng(seed);
    const double rho = C.rho();
    const double catching_up_L = check_integral_inequality(
        x, catching_up_test(C, x, cfg.gamma), nu, C, rho);
    double min_L = catching_up_L;
    const int random_tests = 16;
    for (int i = 0; i < random_tests; ++i)
      min_L = std::min(min_L, check_integral_inequality(
                                  x, random_feasible_test(C, x, 0.25, rng,
                                                          cfg.gamma),
                                  nu, C, rho));
    const bool witness_ok =
        report.unbounded() || min_L >= report.R - 1e-9 * (1.0 + std::abs(report.R));

    Json doc;
    doc["verdict"] = to_string(cert.verdict);
    doc["R"] = number(report.R);
    doc["lower_bound"] = number(report.lower_bound);
    doc["worst_time"] = number(report.worst_time);
    doc["worst_m"] = number(report.worst_m);
    doc["tolerances"] = {{"certificate_tol", number(cert.certificate_tol)},
                         {"scaled_tol", number(cert.scaled_tol)},
                         {"feasibility_tol", number(report.feasibility_tol)}};
    doc["variation"] = number(report.variation);
    doc["rho"] = number(report.rho);
    doc["reference_measure"] = report.variation > 0.0 ? "|dx|" : "lebesgue";
    doc["atoms"] = report.pointwise.size();
    doc["marginal_atoms"] = cert.marginal_atoms;
    doc["test_witness"] = {{"seed", seed},
                           {"tests", random_tests + 1},
                           {"catching_up_L", number(catching_up_L)},
                           {"min_L", number(min_L)},
                           {"ok", witness_ok}};
    write_json(opts.out, "certificate.json", doc);
    {
      auto out = open_output(opts.out, "residual.csv");
      write_residual_csv(out, report);
    }

    log << "certify: " << to_string(cert.verdict)
        << ", R = " << format_number(report.R)
        << ", worst m = " << format_number(report.worst_m) << " at t = "
        << format_number(report.worst_time) << '\n';
    if (!witness_ok)
      err << "warning: a test function undercut the residual bound\n";
    return cert.verdict == Verdict::Solution ? kOk : kNotSolution;
  });
}

int cmd_converge(const std::filesystem::path &config, const Options &opts,
                 std::ostream &log, std::ostream &err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config);
    ConvergenceOptions options;
    options.levels = opts.levels;
    options.initial_h = cfg.converge_initial_h;
    options.refine = cfg.converge_refine;
    options.gamma = cfg.gamma;
    const ConvergenceStudy study = convergence_study(cfg.scenario, options);

    {
      auto out = open_output(opts.out, "convergence.csv");
      out << "level,h,residual,abs_residual,variation,sup_error\n";
      for (const auto &row : study.rows) {
        out << row.level << ',' << format_number(row.h) << ','
            << format_number(row.residual) << ','
            << format_number(std::abs(row.residual)) << ','
            << format_number(row.variation) << ',';
        if (row.sup_error)
          out << format_number(*row.sup_error);
        out << '\n';
      }
    }
    Json doc;
    doc["scenario"] = study.scenario;
    doc["levels"] = options.levels;
    doc["initial_h"] = number(options.initial_h);
    doc["refine"] = options.refine;
    doc["ok"] = study.ok();
    doc["failures"] = study.failures;
    write_json(opts.out, "convergence.json", doc);

    log << "converge " << study.scenario << ": " << study.rows.size()
        << " levels, " << (study.ok() ? "all invariants held" : "FAILED")
        << '\n';
    for (const auto &f : study.failures)
      err << "invariant failed: " << f << '\n';
    return study.ok() ? kOk : kStudyFailed;
  });
}

int cmd_stability(const std::filesystem::path &config, const Options &opts,
                  std::ostream &log, std::ostream &err) {
  return guarded(err, [&] {
    const Config cfg = load_config(config);
    StabilityOptions options;
    options.n_max = opts.nmax;
    options.gamma = cfg.gamma;
    const StabilityStudy study = stability_study(cfg.scenario, options);

    {
      auto out = open_output(opts.out, "stability.csv");
      out << "n,h,residual_true,residual_frozen,variation,sup_distance_to_2n,"
             "osc_defect,osc_bound\n";
      for (const auto &row : study.rows) {
        out << row.n << ',' << format_number(row.h) << ','
            << format_number(row.residual_true) << ','
            << format_number(row.residual_frozen) << ','
            << format_number(row.variation) << ',';
        if (row.cauchy)
          out << format_number(*row.cauchy);
        out << ',' << format_number(row.osc_defect) << ','
            << format_number(row.osc_bound) << '\n';
      }
    }
    Json doc;
    doc["scenario"] = study.scenario;
    doc["n_max"] = options.n_max;
    doc["variation_bound"] = number(study.variation_bound);
    doc["final_verdict"] = to_string(study.final_verdict);
    doc["ok"] = study.ok();
    doc["failures"] = study.failures;
    write_json(opts.out, "stability.json", doc);

    log << "stability " << study.scenario << ": n up to " << options.n_max
        << ", " << (study.ok() ? "all invariants held" : "FAILED") << '\n';
    for (const auto &f : study.failures)
      err << "invariant failed: " << f << '\n';
    return study.ok() ? kOk : kStudyFailed;
  });
}

int cmd_list_scenarios(std::ostream &log) {
  for (const auto &s : builtin_scenarios()) {
    log << s.name << "  d=" << s.C.dim()
        << "  T=" << format_number(s.horizon())
        << "  rho=" << format_number(s.C.rho())
        << "  reference=" << (s.reference ? "yes" : "no") << '\n'
        << "    " << s.notes << '\n';
  }
  return kOk;
}

} // namespace sweep::cli

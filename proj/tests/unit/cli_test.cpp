#include "commands.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace sweep::cli {
namespace {

namespace fs = std::filesystem;

const fs::path kConfigs = SWEEP_CONFIG_DIR;

class CliTest : public ::testing::Test {
protected:
  void SetUp() override {
    const auto *info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() /
           (std::string("sweep_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    opts_.out = dir_;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string read(const std::string &name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  nlohmann::json json(const std::string &name) const {
    return nlohmann::json::parse(read(name));
  }

  fs::path dir_;
  Options opts_;
  std::ostringstream log_, err_;
};

TEST_F(CliTest, SolveRamp) {
  ASSERT_EQ(cmd_solve(kConfigs / "ramp.conf", opts_, log_, err_), kOk)
      << err_.str();
  const std::string traj = read("trajectory.csv");
  EXPECT_NE(traj.find("\n2,1\n"), std::string::npos) << traj;
  EXPECT_EQ(read("refinement.csv").substr(0, 59),
            "level,h_max,residual,variation,sup_error_if_reference_known");
}

TEST_F(CliTest, SolveTeleportIsOutOfReach) {
  EXPECT_EQ(cmd_solve(kConfigs / "hole_teleport.conf", opts_, log_, err_),
            kStepOutOfReach);
  EXPECT_NE(err_.str().find("step out of prox reach"), std::string::npos);
}

TEST_F(CliTest, SolveMissingX0) {
  EXPECT_EQ(cmd_solve(kConfigs / "missing_x0.conf", opts_, log_, err_),
            kInvalidInput);
  EXPECT_NE(err_.str().find("x0"), std::string::npos);
  EXPECT_EQ(cmd_solve(kConfigs / "nothing-here.conf", opts_, log_, err_),
            kInvalidInput);
}

TEST_F(CliTest, SolveThenCertify) {
  for (const char *config : {"ramp.conf", "jump.conf", "ramp-builtin.conf",
                             "hole-builtin.conf", "sine-play-builtin.conf"}) {
    ASSERT_EQ(cmd_solve(kConfigs / config, opts_, log_, err_), kOk) << config;
    EXPECT_EQ(cmd_certify(kConfigs / config, dir_ / "trajectory.csv", opts_,
                          log_, err_),
              kOk)
        << config << ": " << err_.str();
    const auto cert = json("certificate.json");
    EXPECT_EQ(cert["verdict"], "Solution");
    EXPECT_TRUE(cert["test_witness"]["ok"].get<bool>());
  }
}

TEST_F(CliTest, CertifyWrongJump) {
  EXPECT_EQ(cmd_certify(kConfigs / "jump.conf", kConfigs / "jump_wrong.csv",
                        opts_, log_, err_),
            kNotSolution);
  const auto cert = json("certificate.json");
  EXPECT_EQ(cert["verdict"], "NotSolution");
  EXPECT_DOUBLE_EQ(cert["worst_m"].get<double>(), -1.0);
  EXPECT_DOUBLE_EQ(cert["worst_time"].get<double>(), 1.0);
  EXPECT_DOUBLE_EQ(cert["R"].get<double>(), -3.0);
  EXPECT_EQ(cert["lower_bound"], "-inf");
  EXPECT_DOUBLE_EQ(cert["test_witness"]["catching_up_L"].get<double>(), -3.0);
  EXPECT_EQ(read("residual.csv"), "t,mass,norm_v,m,cumulative_R\n1,3,1,-1,-3\n");
}

TEST_F(CliTest, CertifyInfeasibleTrajectory) {
  {
    std::ofstream out(dir_ / "bad.csv");
    out << "t,x1\n0,0\n1,0.5\n2,2\n";
  }
  EXPECT_EQ(cmd_certify(kConfigs / "jump.conf", dir_ / "bad.csv", opts_, log_,
                        err_),
            kInvalidInput);
  EXPECT_NE(err_.str().find("trajectory infeasible at t=1"), std::string::npos);
}

TEST_F(CliTest, CertifyMalformedCsv) {
  {
    std::ofstream out(dir_ / "bad.csv");
    out << "t,x1\n0,zero\n";
  }
  EXPECT_EQ(cmd_certify(kConfigs / "jump.conf", dir_ / "bad.csv", opts_, log_,
                        err_),
            kInvalidInput);
  EXPECT_NE(err_.str().find("format error"), std::string::npos);
}

TEST_F(CliTest, ConvergeRamp) {
  ASSERT_EQ(cmd_converge(kConfigs / "ramp-builtin.conf", opts_, log_, err_),
            kOk)
      << err_.str();
  std::istringstream csv(read("convergence.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "level,h,residual,abs_residual,variation,sup_error");
  int rows = 0;
  double previous_abs = 1.0;
  while (std::getline(csv, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string level, h, residual, abs_residual;
    std::getline(fields, level, ',');
    std::getline(fields, h, ',');
    std::getline(fields, residual, ',');
    std::getline(fields, abs_residual, ',');
    EXPECT_LE(std::stod(abs_residual), previous_abs);
    previous_abs = std::stod(abs_residual);
  }
  EXPECT_EQ(rows, 5);
  EXPECT_TRUE(json("convergence.json")["ok"].get<bool>());
}

TEST_F(CliTest, ConvergeFrozenGridFails) {
  EXPECT_EQ(cmd_converge(kConfigs / "ramp_frozen.conf", opts_, log_, err_),
            kStudyFailed);
  EXPECT_NE(err_.str().find("invariant failed"), std::string::npos);
  EXPECT_FALSE(json("convergence.json")["ok"].get<bool>());
}

TEST_F(CliTest, StabilitySinePlay) {
  ASSERT_EQ(cmd_stability(kConfigs / "sine-play-builtin.conf", opts_, log_,
                          err_),
            kOk)
      << err_.str();
  const auto doc = json("stability.json");
  EXPECT_EQ(doc["n_max"], 256);
  EXPECT_EQ(doc["final_verdict"], "Solution");
  EXPECT_EQ(read("stability.csv").substr(0, 24), "n,h,residual_true,residu");
}

TEST_F(CliTest, OutputsAreDeterministic) {
  opts_.nmax = 32;
  opts_.levels = 3;
  auto run = [&](const fs::path &out) {
    Options o = opts_;
    o.out = out;
    cmd_solve(kConfigs / "hole-builtin.conf", o, log_, err_);
    cmd_certify(kConfigs / "hole-builtin.conf", out / "trajectory.csv", o,
                log_, err_);
    cmd_converge(kConfigs / "hole-builtin.conf", o, log_, err_);
    cmd_stability(kConfigs / "hole-builtin.conf", o, log_, err_);
  };
  run(dir_ / "a");
  run(dir_ / "b");
  for (const char *name :
       {"trajectory.csv", "refinement.csv", "certificate.json", "residual.csv",
        "convergence.csv", "convergence.json", "stability.csv",
        "stability.json"}) {
    std::ifstream a(dir_ / "a" / name, std::ios::binary);
    std::ifstream b(dir_ / "b" / name, std::ios::binary);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    EXPECT_FALSE(sa.str().empty()) << name;
    EXPECT_EQ(sa.str(), sb.str()) << name;
  }
}

TEST_F(CliTest, ListScenarios) {
  EXPECT_EQ(cmd_list_scenarios(log_), kOk);
  for (const char *name : {"ramp", "jump", "sine-play", "hole", "disk",
                           "crescent"})
    EXPECT_NE(log_.str().find(name), std::string::npos) << name;
}

} // namespace
} // namespace sweep::cli

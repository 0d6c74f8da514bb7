#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "stagfv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = stagfv::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("stagfv_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int count_files(const fs::path& dir, const std::string& prefix) {
  int n = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().filename().string().rfind(prefix, 0) == 0) ++n;
  }
  return n;
}

}  // namespace

TEST(Cli, DeriveTablesMatchesStoredCoefficients) {
  const Result r = call({"derive-tables"});
  EXPECT_EQ(r.code, stagfv::cli::kOk) << r.err;
  EXPECT_NE(r.out.find("pyramid"), std::string::npos);
}

TEST(Cli, MissingGammaIsReported) {
  const fs::path dir = scratch("nogamma");
  std::ofstream(dir / "bad.cfg") << "t_end = 0.1\n";
  const Result r = call({"run", "--config", (dir / "bad.cfg").string(), "--preset", "shock-tube",
                         "--n", "2", "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, stagfv::cli::kFailure);
  EXPECT_NE(r.err.find("gamma"), std::string::npos);
}

TEST(Cli, UnknownSubcommandFails) {
  EXPECT_NE(call({"frobnicate"}).code, stagfv::cli::kOk);
  EXPECT_NE(call({"run", "--preset", "nozzle"}).code, stagfv::cli::kOk);
}

TEST(Cli, ShockTubePresetWritesSnapshots) {
  const fs::path dir = scratch("tube");
  const Result r = call({"run", "--preset", "shock-tube", "--n", "2", "--out", dir.string()});
  ASSERT_EQ(r.code, stagfv::cli::kOk) << r.err;
  EXPECT_GE(count_files(dir, "snapshot_"), 2);
  EXPECT_TRUE(fs::exists(dir / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(dir / "config.txt"));
}

TEST(Cli, CflViolationExitsWithCodeTwo) {
  const fs::path dir = scratch("cfl");
  std::ofstream(dir / "big.cfg") << "gamma = 1.4\nt_end = 0.003\ndt = 1e-3\n";
  const Result r = call({"run", "--config", (dir / "big.cfg").string(), "--preset", "shock-tube",
                         "--n", "2", "--out", (dir / "out").string()});
  EXPECT_EQ(r.code, stagfv::cli::kCflViolation);
  EXPECT_FALSE(r.err.empty());
  EXPECT_GE(count_files(dir / "out", "snapshot_"), 1);
  EXPECT_TRUE(fs::exists(dir / "out" / "diagnostics.csv"));
}

TEST(Cli, MeshGenRoundTrip) {
  const fs::path dir = scratch("mesh");
  EXPECT_EQ(call({"mesh-gen", "--kind", "hybrid", "--n", "1", "--out", (dir / "h.vtk").string()}).code,
            stagfv::cli::kOk);
  EXPECT_TRUE(fs::exists(dir / "h.vtk"));
  EXPECT_EQ(call({"mesh-gen", "--kind", "unit-quad", "--n", "3", "--out", (dir / "q.mesh").string()}).code,
            stagfv::cli::kOk);
  const Result r = call({"run", "--config", (dir / "c.cfg").string(), "--mesh", (dir / "q.mesh").string(),
                         "--out", (dir / "out").string()});
  EXPECT_NE(r.code, stagfv::cli::kOk);  // config file missing
  std::ofstream(dir / "c.cfg") << "gamma = 1.4\nt_end = 0.01\n"
                                  "bc.xmin = slip\nbc.xmax = slip\nbc.ymin = slip\nbc.ymax = slip\n"
                                  "init.rho = 1\ninit.p = 1\ninit.u = 0 0\n";
  const Result ok = call({"run", "--config", (dir / "c.cfg").string(), "--mesh", (dir / "q.mesh").string(),
                          "--out", (dir / "out").string()});
  EXPECT_EQ(ok.code, stagfv::cli::kOk) << ok.err;
}

TEST(Cli, LwCheckConstantFields) {
  const Result r = call({"lw-check", "--levels", "2", "--kind", "quad", "--constant"});
  EXPECT_EQ(r.code, stagfv::cli::kOk) << r.err;
  EXPECT_EQ(call({"lw-check", "--levels", "1"}).code, stagfv::cli::kFailure);
}

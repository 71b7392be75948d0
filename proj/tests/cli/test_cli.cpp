#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

std::string data(const std::string& name) { return std::string(GAUGEWALK_TEST_DATA) + "/" + name; }

Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" + GAUGEWALK_CLI + "' " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("gaugewalk_cli_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return (dir_ / sub).string(); }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("check-field --bogus").code, 2);
  EXPECT_EQ(run("gauge-check --input " + data("landau_potential.json")).code, 2);
  EXPECT_EQ(run("couple --format xml --input " + data("magnetic_hadamard.gw") + " --out " + out()).code, 2);
  EXPECT_EQ(run("--version").code, 0);
  EXPECT_EQ(run("--help").code, 0);
}

TEST_F(Cli, BadCorpusExitsOne) {
  for (const auto& e : fs::directory_iterator(data("bad"))) {
    const Result r = run("check-field --input '" + e.path().string() + "' --out " + out());
    EXPECT_EQ(r.code, 1) << e.path();
  }
  EXPECT_EQ(run("check-field --input " + out("missing.gw")).code, 1);
}

TEST_F(Cli, JsonDiagnostics) {
  const std::string cmd = std::string("'") + GAUGEWALK_CLI + "' check-field --json --input " +
                          data("bad/zero_den.gw") + " 2>&1 >/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  ASSERT_NE(p, nullptr);
  std::string err;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) err.append(buf, n);
  pclose(p);
  const auto j = nlohmann::json::parse(err).at("diagnostics").at(0);
  EXPECT_EQ(j.at("line"), 2);
  EXPECT_EQ(j.at("col"), 32);
  EXPECT_NE(j.at("message").get<std::string>().find("zero denominator"), std::string::npos);
}

TEST_F(Cli, CheckField) {
  const Result r = run("check-field --input " + data("magnetic_hadamard.gw") + " --out " + out());
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("closed: true"), std::string::npos);
  EXPECT_NE(r.out.find("flux quantized: true"), std::string::npos);

  const Result j = run("check-field --json --input " + data("third_flux_torus.json") + " --out " + out());
  EXPECT_EQ(j.code, 0);
  EXPECT_TRUE(nlohmann::json::parse(j.out).at("closed").get<bool>());
  EXPECT_TRUE(fs::exists(dir_ / "manifest.json"));
}

TEST_F(Cli, SolveThenGaugeCheck) {
  const Result s = run("solve-potential --input " + data("third_flux_torus.json") + " --out " + out());
  ASSERT_EQ(s.code, 0);
  ASSERT_TRUE(fs::exists(dir_ / "potential.json"));
  EXPECT_NE(s.out.find("residual: 0"), std::string::npos);

  const Result g = run("gauge-check --input " + data("landau_potential.json") + " --input " +
                       data("symmetric_potential.json") + " --out " + out("g"));
  EXPECT_EQ(g.code, 0);
  EXPECT_EQ(g.out.rfind("equivalent", 0), 0u) << g.out;
  EXPECT_TRUE(fs::exists(dir_ / "g" / "witness.json"));

  std::string bent = slurp(data("landau_potential.json"));
  bent.replace(bent.find("\"num\": 1"), 8, "\"num\": 2");
  std::ofstream(dir_ / "bent.json") << bent;
  const Result n = run("gauge-check --input " + data("landau_potential.json") + " --input " + out("bent.json") +
                       " --out " + out("n"));
  EXPECT_EQ(n.code, 0);
  EXPECT_EQ(n.out.rfind("not equivalent", 0), 0u) << n.out;

  EXPECT_EQ(run("gauge-check --input " + data("landau_potential.json") + " --input " +
                data("lone_plaquette.json") + " --out " + out("n")).code, 1);
}

TEST_F(Cli, SpectrumBandCount) {
  const Result r = run("spectrum --input " + data("magnetic_hadamard.gw") + " --out " + out());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bands: 6"), std::string::npos) << r.out;
  EXPECT_FALSE(slurp(dir_ / "spectrum.csv").empty());
}

TEST_F(Cli, ButterflyPeriodic) {
  const Result r = run("butterfly --input " + data("butterfly_small.gw") + " --out " + out());
  ASSERT_EQ(r.code, 0);
  std::ifstream csv(dir_ / "butterfly.csv");
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "flux,omega_bin,count");
  std::map<std::string, std::map<int, long>> rows;
  while (std::getline(csv, line)) {
    std::istringstream ls(line);
    std::string flux, bin, count;
    std::getline(ls, flux, ',');
    std::getline(ls, bin, ',');
    std::getline(ls, count, ',');
    rows[flux][std::stoi(bin)] = std::stol(count);
  }
  ASSERT_TRUE(rows.count("0") && rows.count("1") && rows.count("2"));
  EXPECT_EQ(rows["0"], rows["1"]);
  EXPECT_EQ(rows["0"], rows["2"]);
  ASSERT_TRUE(rows.count("0.5") && rows.count("1.5"));
  EXPECT_EQ(rows["0.5"], rows["1.5"]);
  EXPECT_EQ(slurp(dir_ / "butterfly.pgm").substr(0, 2), "P5");
}

TEST_F(Cli, EvolveMatchesReturnOracle) {
  const Result r = run("evolve --input " + data("electric_line.gw") + " --out " + out());
  ASSERT_EQ(r.code, 0);
  const auto s = nlohmann::json::parse(slurp(dir_ / "summary.json"));
  const double expected[] = {1, 0, 0.25, 0, 0.25, 0, 0.765625, 0, 0.140625, 0, 0.140625, 0, 0.299072265625};
  const auto& rp = s.at("return_prob");
  ASSERT_EQ(rp.size(), 13u);
  for (std::size_t t = 0; t < 13; ++t) EXPECT_NEAR(rp[t].get<double>(), expected[t], 1e-12) << t;
  EXPECT_LE(s.at("norm_drift").get<double>(), 1e-9);
}

TEST_F(Cli, CoupleFormats) {
  const Result j = run("couple --json --input " + data("magnetic_hadamard.gw") + " --out " + out());
  ASSERT_EQ(j.code, 0);
  const auto o = nlohmann::json::parse(j.out);
  EXPECT_EQ(o.at("dimension"), 18);
  EXPECT_LE(o.at("unitarity_residual").get<double>(), 1e-12);
  const Result b = run("couple --format bin --input " + data("magnetic_hadamard.gw") + " --out " + out());
  ASSERT_EQ(b.code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "matrix.bin"));
}

TEST_F(Cli, DeterministicOutputs) {
  for (const std::string sub : {"a", "b"}) {
    ASSERT_EQ(run("evolve --input " + data("electric_line.gw") + " --out " + out(sub)).code, 0);
    ASSERT_EQ(run("butterfly --input " + data("butterfly_small.gw") + " --out " + out(sub)).code, 0);
    ASSERT_EQ(run("delta-gamma-demo --seed 7 --out " + out(sub)).code, 0);
  }
  for (const char* f : {"trajectory.csv", "summary.json", "butterfly.csv", "butterfly.pgm"})
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
}

TEST_F(Cli, DeltaGammaDemo) {
  const Result r = run("delta-gamma-demo --json --seed 3 --out " + out());
  ASSERT_EQ(r.code, 0);
  const auto o = nlohmann::json::parse(r.out);
  EXPECT_EQ(o.at("delta_gamma_max_deviation").get<double>(), 0.0);
  EXPECT_LE(o.at("intertwining_max_deviation").get<double>(), 1e-10);
}

TEST_F(Cli, OutputDirPrecedence) {
  const std::string env = "GAUGEWALK_OUT='" + out("env") + "'";
  ASSERT_EQ(run("check-field --input " + data("magnetic_hadamard.gw"), env).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "env" / "manifest.json"));
  ASSERT_EQ(run("check-field --input " + data("magnetic_hadamard.gw") + " --out " + out("flag"), env).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "flag" / "manifest.json"));

  const auto m = nlohmann::json::parse(slurp(dir_ / "flag" / "manifest.json"));
  EXPECT_EQ(m.at("command"), "check-field");
  ASSERT_EQ(m.at("inputs").size(), 1u);
  EXPECT_EQ(m.at("inputs")[0].at("sha256").get<std::string>().size(), 64u);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qrepeater/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qrep::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return std::string(QREP_TEST_DATA_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Cli, HelpAndUsage) {
  EXPECT_EQ(run({"--help"}).code, 0);
  const Result none = run({});
  EXPECT_EQ(none.code, 1);
  EXPECT_NE(none.err.find("Usage"), std::string::npos);
  const Result bad = run({"elementary-sweep", "--no-such-flag"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("elementary-sweep"), std::string::npos);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
}

TEST(Cli, ElementarySweepAnalytic) {
  const Result r = run({"elementary-sweep", "--scheme", "st", "--config", config("elementary_m10.json"),
                        "--distance-start", "0", "--distance-end", "400", "--distance-step", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 42u);
  EXPECT_EQ(rows[0], "distance_km,scheme,rate_per_s,std_error,method");
  EXPECT_EQ(rows[1].rfind("0,st,", 0), 0u);
  EXPECT_NE(rows[1].find(",0,analytic"), std::string::npos);
  EXPECT_NE(r.err.find("\"M\":10"), std::string::npos);
  EXPECT_NE(r.err.find("seed: 1"), std::string::npos);
}

TEST(Cli, ElementarySweepMonteCarloDeterministic) {
  const std::vector<std::string> args{"elementary-sweep", "--scheme", "ss,tt", "--distance-end", "20",
                                      "--episodes",       "2000",     "--seed", "9"};
  const Result a = run(args);
  const Result b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto rows = lines(a.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_NE(rows[1].find(",ss,"), std::string::npos);
  EXPECT_NE(rows[1].find(",mc"), std::string::npos);
  EXPECT_NE(rows[2].find(",tt,"), std::string::npos);
}

TEST(Cli, FullPrecisionNumbers) {
  const Result r = run({"elementary-sweep", "--scheme", "st", "--distance-end", "0"});
  ASSERT_EQ(r.code, 0);
  const auto rows = lines(r.out);
  const std::string rate = rows[1].substr(5, rows[1].find(',', 5) - 5);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", std::stod(rate));
  EXPECT_EQ(rate, buf);
}

TEST(Cli, OverridesAndValidation) {
  const Result r = run({"elementary-sweep", "--scheme", "st", "--distance-end", "0", "--M", "3", "--N", "3"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("N*M even"), std::string::npos);
  const Result q = run({"elementary-sweep", "--scheme", "tt", "--p_tps", "0.6", "--eta_det", "1"});
  EXPECT_EQ(q.code, 1);
  EXPECT_NE(q.err.find("q = 1.2 > 1"), std::string::npos);
  const Result ok = run({"elementary-sweep", "--scheme", "tt", "--distance-end", "0", "--eta_qm", "0.75"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.err.find("override eta_qm = 0.75"), std::string::npos);
}

TEST(Cli, ConfigRejectsUnknownKey) {
  const auto path = std::filesystem::temp_directory_path() / "qrep_cli_bad.json";
  {
    std::ofstream f(path);
    f << R"({"p_tps": 0.01, "colour": "blue"})";
  }
  const Result r = run({"chain-sweep", "--config", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, ChainSweep) {
  const Result r = run({"chain-sweep", "--scheme", "ss,st", "--total-distance-start", "100", "--total-distance-end",
                        "300", "--total-distance-step", "100", "--config", config("chain_realistic.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "total_distance_km,scheme,best_j,rate_per_s");

  const Result full = run({"chain-sweep", "--scheme", "tt", "--total-distance-end", "0", "--full-table",
                           "--j-min", "2", "--j-max", "4"});
  ASSERT_EQ(full.code, 0) << full.err;
  const auto frows = lines(full.out);
  ASSERT_EQ(frows.size(), 4u);
  EXPECT_EQ(frows[0], "total_distance_km,scheme,j,rate_per_s");
  EXPECT_EQ(frows[1].rfind("0,tt,2,", 0), 0u);
  EXPECT_EQ(run({"chain-sweep", "--j-min", "3", "--j-max", "2"}).code, 1);
}

TEST(Cli, OptimizeJson) {
  const Result r = run({"optimize", "--scheme", "st", "--total-distance-start", "400", "--total-distance-end", "400"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc["results"].size(), 1u);
  const auto& res = doc["results"][0];
  EXPECT_EQ(res["scheme"], "st");
  EXPECT_EQ(res["table"].size(), 5u);
  const int best = res["best_j"];
  double best_rate = 0.0;
  for (const auto& row : res["table"]) best_rate = std::max(best_rate, row["rate_per_s"].get<double>());
  EXPECT_DOUBLE_EQ(res["best_rate_per_s"].get<double>(), best_rate);
  EXPECT_GE(best, 1);
}

TEST(Cli, PhaseBudget) {
  const Result r = run({"phase-budget", "--fidelity", "0.99", "--freq-separation-ghz", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["displacement_mm"].get<double>(), 0.96, 0.005);
  EXPECT_NEAR(doc["sigma_rad"].get<double>(), 0.201, 0.001);
  EXPECT_EQ(run({"phase-budget", "--fidelity", "0.4"}).code, 1);
  const Result p = run({"phase-budget", "--path-difference-mm", "1"});
  EXPECT_NEAR(nlohmann::json::parse(p.out)["paired_phase_rad"].get<double>(), 0.2096, 1e-4);
}

TEST(Cli, McSubcommand) {
  const Result r = run({"mc", "--target", "chain", "--scheme", "tt", "--rounds", "1", "--episodes", "3000",
                        "--preset", "chain-realistic", "--link_length_km", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["mean"].get<double>(), doc["reference"].get<double>(), 4.0 * doc["std_error"].get<double>());
  EXPECT_EQ(run({"mc", "--target", "chain", "--rounds", "4"}).code, 1);
  EXPECT_EQ(run({"mc", "--episodes", "0"}).code, 1);
}

TEST(Cli, VerifyAndOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "qrep_verify.txt";
  const Result r = run({"verify", "--episodes", "4000", "--output", path.string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  std::stringstream text;
  text << f.rdbuf();
  EXPECT_NE(text.str().find("all checks passed"), std::string::npos);
  EXPECT_NE(text.str().find("PASS | sbsa"), std::string::npos);
  std::filesystem::remove(path);
}

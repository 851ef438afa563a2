#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "benflow/cli/commands.hpp"
#include "benflow/cli/config.hpp"
#include "benflow/cli/examples.hpp"
#include "benflow/cli/matrix_io.hpp"
#include "benflow/cli/reports.hpp"
#include "benflow/errors.hpp"

using namespace benflow;
using namespace benflow::cli;
using nlohmann::json;

namespace {

const std::string kFixtures = BENFLOW_FIXTURE_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "benflow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("benflow_test_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
             std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Config, DefaultsAndOverrides) {
  const RunConfig d;
  EXPECT_EQ(d.base, 10);
  EXPECT_EQ(d.horizon, 1e4);
  EXPECT_EQ(d.step, 1e-2);
  EXPECT_EQ(d.weyl_k, 5);
  EXPECT_EQ(d.seed, 42u);
  const RunConfig c = config_from_json(json::parse(R"({"base": 7, "thresholds": {"distance": 0.05}, "seed": 3})"));
  EXPECT_EQ(c.base, 7);
  EXPECT_EQ(c.distance_threshold, 0.05);
  EXPECT_EQ(c.weyl_multiplier, 3.0);
  EXPECT_EQ(c.seed, 3u);
  EXPECT_EQ(config_from_json(to_json(c)).base, 7);
}

TEST(Config, Rejections) {
  EXPECT_THROW(config_from_json(json::parse(R"({"bsae": 7})")), UsageError);
  EXPECT_THROW(config_from_json(json::parse(R"({"base": 1})")), UsageError);
  EXPECT_THROW(config_from_json(json::parse(R"({"tolerances": {"rank": -1}})")), UsageError);
  EXPECT_THROW(config_from_json(json::parse(R"({"format": "xml"})")), UsageError);
}

TEST(MatrixIo, Formats) {
  const auto csv = parse_matrix_text("1, 2\n3, 4\n");
  EXPECT_EQ(csv.matrix(1, 0), 3.0);
  const auto arr = parse_matrix_text("[[1, \"pi\"], [0, \"2*pi/ln10\"]]");
  EXPECT_NEAR(arr.matrix(0, 1), std::numbers::pi, 1e-15);
  EXPECT_NEAR(arr.matrix(1, 1), 2.0 * std::numbers::pi / std::numbers::ln10, 1e-15);
  const auto obj = read_matrix_file(fixture("rotation_pi.json"));
  EXPECT_TRUE(obj.annotated());
  EXPECT_EQ(obj.eigenvalues.size(), 2u);
  EXPECT_EQ(obj.matrix.dim(), 2);
}

TEST(MatrixIo, ParseErrorsCarryPosition) {
  try {
    read_matrix_file(fixture("bad_entry.csv"));
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 2, column 3"), std::string::npos);
  }
  try {
    parse_matrix_text("[[1, 2],\n [3, 4]");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_matrix_text("1,2\n3\n"), UsageError);
  EXPECT_THROW(parse_matrix_text(""), UsageError);
}

TEST(MatrixIo, SignalCsv) {
  const auto s = parse_signal_csv("t,value\n0,1.5\n# note\n1,2.5\n");
  ASSERT_EQ(s.t.size(), 2u);
  EXPECT_EQ(s.value[1], 2.5);
  try {
    parse_signal_csv("t,value\n0,1\n1,abc\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Reports, BenfordRoundTrip) {
  const auto r = benford_verdict(SignalSpec{Synthetic{1.0, 0, {{0.0, 1.0}}}}, Base(10), SamplingGrid(100.0, 0.01));
  const json j = to_json(r);
  const BenfordReport back = benford_report_from_json(json::parse(j.dump()));
  EXPECT_EQ(to_json(back), j);
  EXPECT_EQ(back.verdict, r.verdict);
  EXPECT_EQ(back.digit_histogram.counts, r.digit_histogram.counts);
}

TEST(Reports, CensusRoundTrip) {
  EnsembleSpec s;
  s.d = 3;
  s.n = 50;
  s.seed = 4;
  const CensusReport r = resonance_census(s, Base(10), 1e-6);
  const json j = to_json(r);
  EXPECT_EQ(to_json(census_report_from_json(json::parse(j.dump()))), j);
  for (const char* key : {"n", "imaginary_axis_hits", "multiple_eigenvalue_hits", "relation_hits", "tol", "height",
                          "seed", "ensemble"})
    EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Reports, DigitsCsv) {
  const auto r = benford_verdict(SignalSpec{Synthetic{1.0, 0, {{0.0, 1.0}}}}, Base(10), SamplingGrid(100.0, 0.01));
  const std::string csv = digits_csv(r);
  EXPECT_EQ(csv.rfind("digit,frequency,benford\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
}

TEST(Cli, AnalyzeRankOne) {
  const auto o = invoke({"analyze-matrix", fixture("rank_one.csv")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_FALSE(j["hyperbolic"].get<bool>());
  ASSERT_EQ(j["spectrum"]["dominant"].size(), 1u);
  EXPECT_NEAR(j["spectrum"]["dominant"][0]["re"].get<double>(), 2.0, 1e-8);
  EXPECT_EQ(j["spectrum"]["points"].size(), 2u);
  EXPECT_TRUE(j["planar_criterion"].is_boolean());
  EXPECT_TRUE(j["exact"].is_null());
}

TEST(Cli, AnalyzeAnnotatedNonresonant) {
  const auto o = invoke({"analyze-matrix", fixture("rotation_pi.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_FALSE(j["exact"]["spectrum"]["resonant"].get<bool>());
  EXPECT_TRUE(j["exact"]["exp_nonresonant_all_tested_bases"].get<bool>());
  EXPECT_TRUE(j["hyperbolic"].get<bool>());
}

TEST(Cli, AnalyzeAnnotatedResonant) {
  const auto o = invoke({"analyze-matrix", fixture("resonant_rotation.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  const json& w = j["exact"]["spectrum"]["witness"];
  EXPECT_TRUE(j["exact"]["spectrum"]["resonant"].get<bool>());
  EXPECT_EQ(w["kind"], "real_part_in_span");
  EXPECT_EQ(w["q"], "2");
  EXPECT_EQ(w["p"], json::array({"1"}));
}

TEST(Cli, AnalyzeThreeByThree) {
  const auto o = invoke({"analyze-matrix", fixture("three_by_three.json")});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_TRUE(j["exact"]["exp_nonresonant_all_tested_bases"].get<bool>());
  EXPECT_FALSE(j["exact"]["dominant"]["resonant"].get<bool>());
}

TEST(Cli, AnalyzeRejectsWrongAnnotation) {
  TempDir tmp;
  const auto p = tmp.write("m.json", R"({"matrix": [[1, 0], [0, 2]], "eigenvalues": [{"re": "1", "im": "0"}, {"re": "3", "im": "0"}]})");
  EXPECT_EQ(invoke({"analyze-matrix", p}).code, kExitUsage);
}

TEST(Cli, AnalyzeCsvFormat) {
  const auto o = invoke({"--format", "csv", "analyze-matrix", fixture("rank_one.csv")});
  ASSERT_EQ(o.code, kExitOk);
  EXPECT_EQ(o.out.rfind("re,im,multiplicity,jordan_index,dominant\n", 0), 0u);
}

TEST(Cli, BenfordSyntheticExponential) {
  const auto o = invoke({"benford", "--rate", "1"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["verdict"], "BENFORD_PASS");
  EXPECT_LT(j["significand_distance"].get<double>(), 0.01);
}

TEST(Cli, BenfordResonantNorm) {
  const auto o = invoke({"benford", "--matrix", fixture("resonant_rotation.json"), "--norm", "spectral"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(json::parse(o.out)["verdict"], "FAIL");
}

TEST(Cli, BenfordEntryAndDigits) {
  TempDir tmp;
  const auto digits = tmp.file("digits.csv");
  const auto o = invoke({"--horizon", "1000", "benford", "--matrix", fixture("rotation_pi.json"), "--entry", "1,1",
                         "--digits-csv", digits});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(json::parse(o.out)["verdict"], "BENFORD_PASS");
  std::ifstream in(digits);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "digit,frequency,benford");
}

TEST(Cli, BenfordCsvData) {
  TempDir tmp;
  std::ostringstream os;
  os << "t,value\n";
  os.precision(17);
  for (int n = 0; n < 20000; ++n) os << n * 0.01 << "," << std::exp(n * 0.01) << "\n";
  const auto p = tmp.write("signal.csv", os.str());
  const auto out = tmp.file("report.json");
  const auto o = invoke({"--out", out, "benford", "--csv", p});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  std::ifstream in(out);
  const json j = json::parse(in);
  EXPECT_EQ(j["verdict"], "BENFORD_PASS");
  EXPECT_EQ(j["sample_count"], 20000);
}

TEST(Cli, BenfordUsageErrors) {
  EXPECT_EQ(invoke({"benford"}).code, kExitUsage);
  EXPECT_EQ(invoke({"benford", "--rate", "1", "--csv", "x.csv"}).code, kExitUsage);
  EXPECT_EQ(invoke({"benford", "--mode", "abc"}).code, kExitUsage);
  EXPECT_EQ(invoke({"benford", "--matrix", fixture("rank_one.csv"), "--entry", "3,1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"benford", "--matrix", fixture("rank_one.csv"), "--norm", "nuclear"}).code, kExitUsage);
  EXPECT_EQ(invoke({"benford", "--matrix", fixture("bad_entry.csv")}).code, kExitUsage);
  EXPECT_EQ(invoke({"benford", "--matrix", "/nonexistent/m.csv"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--base", "1", "benford", "--rate", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--horizon", "0.5", "benford", "--rate", "1"}).code, kExitUsage);
}

TEST(Cli, ParseErrorMessageHasPosition) {
  const auto o = invoke({"analyze-matrix", fixture("bad_entry.csv")});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_NE(o.err.find("line 2, column 3"), std::string::npos) << o.err;
}

TEST(Cli, CensusCommand) {
  const auto o = invoke({"census", "--dim", "4", "--n", "2000", "--dist", "gaussian", "--tol", "1e-8"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  const json j = json::parse(o.out);
  EXPECT_EQ(j["imaginary_axis_hits"], 0);
  EXPECT_EQ(j["multiple_eigenvalue_hits"], 0);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_EQ(invoke({"census", "--dim", "4", "--n", "2000"}).out, o.out);
  const auto i = invoke({"--seed", "9", "census", "--dim", "2", "--n", "500", "--dist", "int1"});
  ASSERT_EQ(i.code, kExitOk);
  EXPECT_GT(json::parse(i.out)["imaginary_axis_hits"].get<int>(), 0);
}

TEST(Cli, CensusUsageErrors) {
  EXPECT_EQ(invoke({"census", "--n", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"census", "--dist", "cauchy"}).code, kExitUsage);
  EXPECT_EQ(invoke({"census", "--dist", "int"}).code, kExitUsage);
  EXPECT_EQ(invoke({"census", "--tol", "0"}).code, kExitUsage);
  EXPECT_EQ(invoke({"census", "--height", "0"}).code, kExitUsage);
}

TEST(Cli, GeneralUsage) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
  EXPECT_EQ(invoke({"example", "ex-9-9"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--config", "/nonexistent.json", "census"}).code, kExitUsage);
}

TEST(Cli, ConfigFile) {
  TempDir tmp;
  const auto cfg = tmp.write("cfg.json", R"({"seed": 5, "base": 10})");
  const auto o = invoke({"--config", cfg, "census", "--dim", "2", "--n", "10"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_EQ(json::parse(o.out)["seed"], 5);
  const auto flag = invoke({"--config", cfg, "--seed", "6", "census", "--dim", "2", "--n", "10"});
  EXPECT_EQ(json::parse(flag.out)["seed"], 6);
  const auto bad = tmp.write("bad.json", R"({"sed": 5})");
  EXPECT_EQ(invoke({"--config", bad, "census"}).code, kExitUsage);
}

TEST(Examples, RegistryComplete) {
  const auto& ids = example_ids();
  for (const char* id : {"ex-2a", "ex-3-4-i", "ex-3-4-ii", "ex-3-5", "ex-3-8", "ex-3-9", "ex-3-12", "ex-3-14"})
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  EXPECT_THROW(run_example("nope", RunConfig{}), UsageError);
}

TEST(Examples, QuickOnesMeetExpectations) {
  for (const char* id : {"ex-3-4-i", "ex-3-4-ii", "ex-3-8", "ex-3-12"}) {
    const auto o = invoke({"example", id});
    EXPECT_EQ(o.code, kExitOk) << id << ": " << o.err;
    const json j = json::parse(o.out);
    ASSERT_TRUE(j["checks"].is_array());
    for (const auto& c : j["checks"]) EXPECT_TRUE(c["passed"].get<bool>()) << id << " " << c["name"];
  }
}

TEST(Examples, FailedExpectationExitCode) {
  // No finite sample meets a distance threshold this strict.
  TempDir tmp;
  const auto cfg = tmp.write("strict.json", R"({"thresholds": {"distance": 1e-9}})");
  const auto o = invoke({"--config", cfg, "--horizon", "100", "example", "ex-3-4-i"});
  EXPECT_EQ(o.code, kExitExpectation) << o.err;
  EXPECT_NE(o.err.find("expectation failed"), std::string::npos);
}

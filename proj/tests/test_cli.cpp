#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cesaro/suite.hpp"

using namespace cesaro;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path scratch_dir() {
  const auto d = fs::temp_directory_path() / ("cesaro_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CliRun cli(const std::string& args, const std::string& env = "") {
  const auto dir = scratch_dir();
  const auto out = dir / "stdout.txt";
  const auto err = dir / "stderr.txt";
  const std::string cmd =
      env + " \"" CESARO_CLI "\" " + args + " > \"" + out.string() + "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = scratch_dir() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

// Independent flattening of a JSON tree into path -> leaf.
void flatten(const Json& j, const std::string& path, std::map<std::string, Json>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out[path] = j;
  }
}

}  // namespace

TEST(ParseExperiment, Forms) {
  EXPECT_EQ(parse_experiment("profile").kind, ExperimentKind::profile);
  const auto r = parse_experiment("resolvent:[2,0.4+0.3i]");
  EXPECT_EQ(r.kind, ExperimentKind::resolvent);
  ASSERT_EQ(r.lambdas.size(), 2u);
  EXPECT_EQ(r.lambdas[1].value, Complex(0.4, 0.3));
  ASSERT_TRUE(r.lambdas[0].exact.has_value());
  const auto e = parse_experiment("eigenpairs:[1,2]");
  EXPECT_EQ(e.ms, (std::vector<long>{1, 2}));
  const auto d = parse_experiment("dynamics:e3:[1,2]");
  EXPECT_EQ(d.kind, ExperimentKind::dynamics);
  EXPECT_EQ(d.x_spec, "e3");
  EXPECT_EQ(d.ms, (std::vector<long>{1, 2}));
}

TEST(ParseExperiment, ListSplitsOutsideBrackets) {
  const auto l = parse_experiment_list("profile,resolvent:[2,-1],suite");
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[1].lambdas.size(), 2u);
  EXPECT_EQ(l[2].kind, ExperimentKind::suite);
}

TEST(ParseExperiment, UnknownNameRejected) {
  try {
    (void)parse_experiment_list("profile,bogus");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "experiments");
  }
  EXPECT_THROW(parse_experiment("dynamics:sideways"), ConfigError);
  EXPECT_THROW(parse_experiment("resolvent:[2,x]"), ConfigError);
}

TEST(ConfigJson, FieldsApplied) {
  AnalysisConfig cfg;
  apply_config_json(cfg, R"({"alpha": "log:beta=2", "N": 500, "experiments": ["profile", "spectrum"],
                             "tolerances": {"tail": 4}, "seed": 7, "output": "csv"})");
  EXPECT_EQ(cfg.alpha, "log:beta=2");
  EXPECT_EQ(cfg.N, 500);
  EXPECT_EQ(cfg.experiments.size(), 2u);
  EXPECT_EQ(cfg.trend.tail, 4u);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_EQ(cfg.format, OutputFormat::csv);
}

TEST(ConfigJson, UnknownFieldReportsLine) {
  AnalysisConfig cfg;
  try {
    apply_config_json(cfg, "{\n  \"N\": 100,\n  \"colour\": 3\n}");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "colour");
    EXPECT_EQ(e.line(), 3);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ConfigJson, WrongTypeReportsField) {
  AnalysisConfig cfg;
  try {
    apply_config_json(cfg, "{\n\"alpha\": \"linear\",\n\n\"K\": \"six\"\n}");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "K");
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(ConfigJson, SyntaxErrorReportsLine) {
  AnalysisConfig cfg;
  try {
    apply_config_json(cfg, "{\n\"N\": 100,\n\"K\": ,\n}");
    FAIL() << "no error";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}

TEST(ConfigJson, ValidateRejectsBadValues) {
  AnalysisConfig cfg;
  cfg.alpha = "wobbly";
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  cfg.N = 0;
  EXPECT_THROW(validate(cfg), ConfigError);
  cfg = {};
  EXPECT_NO_THROW(validate(cfg));
}

TEST(Report, EmptyExperimentListEchoesConfigOnly) {
  const auto r = run(AnalysisConfig{});
  std::vector<std::string> keys;
  for (auto it = r.report.begin(); it != r.report.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"schema", "version", "config"}));
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Report, JsonAndCsvCarrySameNumbers) {
  AnalysisConfig cfg;
  cfg.alpha = "log:beta=2";
  cfg.experiments = parse_experiment_list("profile,spectrum");
  const auto r = run(cfg);
  std::map<std::string, Json> leaves;
  flatten(Json::parse(emit(r, OutputFormat::json)), "", leaves);
  std::istringstream csv(emit(r, OutputFormat::csv));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "key,value");
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    ASSERT_NE(comma, std::string::npos) << line;
    const std::string key = line.substr(0, comma);
    std::string value = line.substr(comma + 1);
    ASSERT_TRUE(leaves.count(key)) << key;
    const Json& j = leaves[key];
    if (j.is_number()) {
      EXPECT_EQ(std::stod(value), j.get<double>()) << key;
    } else if (j.is_boolean()) {
      EXPECT_EQ(value, j.get<bool>() ? "true" : "false") << key;
    } else if (j.is_string()) {
      if (value.size() >= 2 && value.front() == '"') value = value.substr(1, value.size() - 2);
      std::string unq;
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] == '"' && i + 1 < value.size() && value[i + 1] == '"') ++i;
        unq += value[i];
      }
      EXPECT_EQ(unq, j.get<std::string>()) << key;
    }
    ++rows;
  }
  // empty arrays flatten to nothing in both
  std::size_t nonempty = 0;
  for (const auto& [k, v] : leaves) nonempty += !(v.is_array() || v.is_object());
  EXPECT_EQ(rows, nonempty);
}

TEST(Report, DeterministicAcrossRuns) {
  AnalysisConfig cfg;
  cfg.alpha = "sqrt";
  cfg.experiments = parse_experiment_list("profile,dynamics:random:[1,2]");
  EXPECT_EQ(emit(run(cfg), OutputFormat::json), emit(run(cfg), OutputFormat::json));
}

TEST(Report, ExitCodeFollowsMismatches) {
  RunResult r;
  EXPECT_EQ(r.exit_code(), 0);
  r.mismatches.push_back("x");
  EXPECT_EQ(r.exit_code(), 1);
}

TEST(Cli, LinearProfileIsNuclear) {
  const auto r = cli("--alpha linear --experiments profile");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["experiments"][0]["result"]["nuclear"]["outcome"], "holds");
}

TEST(Cli, LogSpectrumSandwich) {
  const auto r = cli("--alpha log:beta=2 --experiments spectrum");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto res = Json::parse(r.out)["experiments"][0]["result"];
  EXPECT_EQ(res["sigma"], "D(1) U {1} <= sigma <= closure(D(1))");
  EXPECT_NEAR(res["discs"][0]["s0"]["estimate"].get<double>(), 3.0, 0.05);
}

TEST(Cli, LinearSuiteExitsZero) {
  const auto r = cli("--alpha linear --experiments suite");
  EXPECT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["summary"]["mismatches"], 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("--no-such-flag").exit_code, 2);
  EXPECT_EQ(cli("--experiments bogus").exit_code, 2);
  EXPECT_EQ(cli("--alpha nonsense --experiments profile").exit_code, 2);
  EXPECT_EQ(cli("--output xml").exit_code, 2);
  EXPECT_EQ(cli("--config /definitely/not/here.json").exit_code, 2);
  const auto bad = write_file("bad.json", "{\n  \"N\": 10,\n  \"speed\": 1\n}\n");
  const auto r = cli("--config \"" + bad.string() + "\"");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("speed"), std::string::npos) << r.err;
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto f = write_file("cfg.json", R"({"alpha": "sqrt", "N": 500, "K": 3})");
  const auto r = cli("--config \"" + f.string() + "\" --N 300");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto c = Json::parse(r.out)["config"];
  EXPECT_EQ(c["alpha"], "sqrt");
  EXPECT_EQ(c["N"], 300);
  EXPECT_EQ(c["K"], 3);
}

TEST(Cli, OutputDirectoryFromEnvironment) {
  const auto dir = scratch_dir() / "outdir";
  fs::create_directories(dir);
  fs::remove(dir / "cesaro-report.json");
  const auto r = cli("--alpha linear", "CESARO_OUT_DIR=\"" + dir.string() + "\"");
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Json::parse(slurp(dir / "cesaro-report.json"))["schema"], kReportSchema);
  const auto r2 = cli("--alpha linear --output csv --out named.csv", "CESARO_OUT_DIR=\"" + dir.string() + "\"");
  ASSERT_EQ(r2.exit_code, 0) << r2.err;
  EXPECT_EQ(slurp(dir / "named.csv").substr(0, 9), "key,value");
}

TEST(Cli, ByteIdenticalReplay) {
  const std::string args = "--alpha psum:beta=0.5 --experiments profile,dynamics:random:[1,3] --seed 99";
  const auto a = cli(args);
  const auto b = cli(args);
  ASSERT_EQ(a.exit_code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

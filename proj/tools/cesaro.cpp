#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "cesaro/suite.hpp"

namespace {

constexpr int kUsageError = 2;

std::filesystem::path output_path(const std::string& out, cesaro::OutputFormat format) {
  const char* dir = std::getenv("CESARO_OUT_DIR");
  std::filesystem::path p = out;
  if (p.empty()) {
    if (!dir) return {};
    p = format == cesaro::OutputFormat::json ? "cesaro-report.json" : "cesaro-report.csv";
  }
  if (dir && p.is_relative()) p = std::filesystem::path(dir) / p;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cesaro operator analysis on power series spaces Lambda_0(alpha)"};
  std::string config_path, alpha, experiments, lambdas, ms, output, out;
  long N = 0;
  int K = 0, kmax = 0, lmax = 0;
  double tol = 0;
  std::uint64_t seed = 0;
  bool timings = false;
  app.add_option("--config", config_path, "JSON config file; flags override its fields");
  auto* o_alpha = app.add_option("--alpha", alpha, "alpha generator, e.g. linear, log:beta=2, table:[2,3,5]");
  auto* o_N = app.add_option("--N", N, "resolution");
  auto* o_K = app.add_option("--K", K, "number of weight levels checked");
  auto* o_kmax = app.add_option("--kmax", kmax, "largest k for discs and resolvent rows");
  auto* o_lmax = app.add_option("--lmax", lmax, "largest l searched in continuity checks");
  auto* o_exp = app.add_option("--experiments", experiments,
                               "comma list of profile, spectrum, resolvent[:[l1,..]], eigenpairs[:[m1,..]], "
                               "dynamics[:ones|e<j>|random[:[m1,..]]], suite");
  auto* o_lambda = app.add_option("--lambda", lambdas, "complex points a+bi for resolvent, comma separated");
  auto* o_m = app.add_option("--m", ms, "positive integers for eigenpairs and dynamics, comma separated");
  auto* o_tol = app.add_option("--tol", tol, "s0 bisection tolerance");
  auto* o_seed = app.add_option("--seed", seed, "seed for random vectors");
  auto* o_output = app.add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  auto* o_out = app.add_option("--out", out, "output file (relative paths resolve against CESARO_OUT_DIR)");
  app.add_flag("--timings", timings, "include wall times (breaks byte determinism)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  cesaro::AnalysisConfig cfg;
  try {
    if (!config_path.empty()) cfg = cesaro::load_config_file(config_path);
    if (o_alpha->count()) cfg.alpha = alpha;
    if (o_N->count()) cfg.N = N;
    if (o_K->count()) cfg.K = K;
    if (o_kmax->count()) cfg.kmax = kmax;
    if (o_lmax->count()) cfg.lmax = lmax;
    if (o_exp->count()) cfg.experiments = cesaro::parse_experiment_list(experiments);
    if (o_lambda->count()) cfg.lambdas = cesaro::parse_lambda_list(lambdas);
    if (o_m->count()) cfg.ms = cesaro::parse_int_list(ms);
    if (o_tol->count()) cfg.tol = tol;
    if (o_seed->count()) cfg.seed = seed;
    if (o_output->count()) cfg.format = output == "csv" ? cesaro::OutputFormat::csv : cesaro::OutputFormat::json;
    if (o_out->count()) cfg.out = out;
    cfg.timings = timings;
    cesaro::validate(cfg);
  } catch (const cesaro::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  }

  cesaro::RunResult result;
  try {
    result = cesaro::run(cfg);
  } catch (const cesaro::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kUsageError;
  }

  const std::string text = cesaro::emit(result, cfg.format);
  const auto path = output_path(cfg.out, cfg.format);
  if (path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << path << '\n';
      return kUsageError;
    }
    f << text;
  }
  for (const auto& m : result.mismatches) std::cerr << "mismatch: " << m << '\n';
  return result.exit_code();
}

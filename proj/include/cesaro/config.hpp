#ifndef CESARO_CONFIG_HPP
#define CESARO_CONFIG_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cesaro/scalar.hpp"
#include "cesaro/trend.hpp"

namespace cesaro {

/// Bad configuration; `line` is 0 when the value came from a flag.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& message);
  const std::string& field() const { return field_; }
  int line() const { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class ExperimentKind { profile, spectrum, resolvent, eigenpairs, dynamics, suite };

std::string_view to_string(ExperimentKind k);

/// One entry of the experiment list, e.g. `resolvent:[2,0.4+0.3i]` or `dynamics:e2:[1,3]`.
struct Experiment {
  ExperimentKind kind = ExperimentKind::profile;
  std::vector<ComplexLiteral> lambdas;  // resolvent; empty means use the config default
  std::vector<long> ms;                 // eigenpairs and dynamics; empty means the default
  std::string x_spec;                   // dynamics: ones, e<j> or random
  std::string text;                     // canonical spelling
};

Experiment parse_experiment(std::string_view token);
/// Splits on commas outside brackets.
std::vector<Experiment> parse_experiment_list(std::string_view list);

enum class OutputFormat { json, csv };

struct AnalysisConfig {
  std::string alpha = "linear";
  long N = 10000;
  int K = 6;
  int kmax = 4;
  int lmax = 0;  // 0: 4k + 8 per k
  double tol = 0.01;
  TrendTolerances trend{};
  std::vector<Experiment> experiments;
  std::vector<ComplexLiteral> lambdas;
  std::vector<long> ms;
  OutputFormat format = OutputFormat::json;
  std::uint64_t seed = 20240917;
  std::string out;
  bool timings = false;
};

/// Overlays the fields present in a JSON config document onto `cfg`.
void apply_config_json(AnalysisConfig& cfg, std::string_view text);
AnalysisConfig load_config_file(const std::string& path, AnalysisConfig base = {});

/// Range checks and alpha grammar; throws ConfigError.
void validate(const AnalysisConfig& cfg);

std::vector<ComplexLiteral> parse_lambda_list(std::string_view list, std::string_view field = "lambda");
std::vector<long> parse_int_list(std::string_view list, std::string_view field = "m");

}  // namespace cesaro

#endif  // CESARO_CONFIG_HPP

#ifndef CESARO_SUITE_HPP
#define CESARO_SUITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cesaro/config.hpp"
#include "cesaro/report.hpp"

namespace cesaro {

/// One of the stated equivalences between criteria, compared on a profile.
struct Equivalence {
  std::string name;
  Outcome lhs;
  Outcome rhs;
  /// Empty when either side is inconclusive or the equivalence is out of scope.
  std::optional<bool> agree;
};

/// inverse continuity vs nuclear, the two Delta tracks (nuclear spaces only),
/// D-continuity vs nuclear and shift stable.
std::vector<Equivalence> equivalences(const SpaceProfile& p);

/// Vectors for the dynamics experiment: `ones`, `e<j>` or seeded `random`.
std::vector<Rational> dynamics_vector(const std::string& spec, Index N, std::uint64_t seed);

struct RunResult {
  Json report;
  std::vector<std::string> mismatches;
  int exit_code() const { return mismatches.empty() ? 0 : 1; }
};

/// Runs the experiments in order and compares each outcome with the predicted one.
RunResult run(const AnalysisConfig& cfg);

std::string emit(const RunResult& r, OutputFormat format);

}  // namespace cesaro

#endif  // CESARO_SUITE_HPP

#ifndef CESARO_TREND_HPP
#define CESARO_TREND_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cesaro {

enum class Outcome { holds, fails, inconclusive };

std::string_view to_string(Outcome o);

struct Sample {
  double index;
  double value;
};

struct Witness {
  std::string name;
  double value;
};

/// Tri-state outcome of an asymptotic criterion evaluated at finite resolution.
///
/// A failing verdict always names a witness (index, parameter or weight level);
/// an inconclusive one always carries a reason.
struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  std::vector<Sample> evidence;
  std::string trend;
  std::optional<Witness> witness;
  std::vector<std::pair<std::string, double>> params;
  std::string reason;

  static Verdict holding(std::string trend, std::vector<Sample> evidence = {});
  static Verdict failing(Witness witness, std::string trend, std::vector<Sample> evidence = {});
  static Verdict inconclusive(std::string reason, std::string trend = "inconclusive",
                              std::vector<Sample> evidence = {});

  Verdict& with(std::string key, double value);
  std::optional<double> param(std::string_view key) const;

  bool holds() const { return outcome == Outcome::holds; }
  bool fails() const { return outcome == Outcome::fails; }
  bool is_inconclusive() const { return outcome == Outcome::inconclusive; }
};

/// Indices ceil(2^(j/2)) for j = 0, 1, ... that are >= start and <= N, without
/// repeats; N itself is appended when the ladder stops short of it.
std::vector<long> geometric_ladder(long N, long start = 1);

/// Thresholds used to turn a finite ladder of samples into a trend label.
struct TrendTolerances {
  /// A decaying tail counts as vanishing once it sits this far below its peak.
  double rel_trend = 1e-3;
  /// Relative spread under which a tail is called stable.
  double stable_band = 0.01;
  /// Minimum |d log q / d log n| on the tail for power-law decay.
  double decay_slope = 0.05;
  /// Minimum d L / d log n on the tail for a log-scale quantity to count as growing.
  double growth_slope = 0.005;
  /// Largest ratio of successive running-sup increments still read as converging.
  double geometric_ratio = 0.9;
  std::size_t tail = 5;
  /// Values within this factor of DBL_MAX count as overflow, hence unbounded.
  double overflow_headroom = 10.0;
};

enum class DecayTrend { vanishing, limit, growing, inconclusive };

struct DecayClass {
  DecayTrend trend = DecayTrend::inconclusive;
  double limit = 0.0;  // exp(mean tail log) when trend == limit
  double slope = 0.0;  // d log q / d log n over the tail
  std::string label;
  std::string reason;
};

/// Classifies q_j -> 0, -> positive limit, -> infinity, from log q_j sampled on a ladder.
DecayClass classify_decay(std::span<const long> n, std::span<const double> log_values,
                          const TrendTolerances& tol = {});

enum class SupTrend { bounded, unbounded, inconclusive };

struct SupClass {
  SupTrend trend = SupTrend::inconclusive;
  double sup = 0.0;
  long argmax = 0;
  double slope = 0.0;
  std::string label;
  std::string reason;
};

/// Decides whether sup_n L_n stays bounded, where L is a log-scale quantity
/// sampled on a ladder. `running_max`, when non-empty, holds max_{m <= n_j} L_m
/// over every index rather than ladder points only.
SupClass classify_sup(std::span<const long> n, std::span<const double> values,
                      std::span<const double> running_max = {}, const TrendTolerances& tol = {});

std::vector<Sample> make_samples(std::span<const long> n, std::span<const double> values);

}  // namespace cesaro

#endif  // CESARO_TREND_HPP

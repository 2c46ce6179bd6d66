#ifndef CESARO_SEQUENCES_HPP
#define CESARO_SEQUENCES_HPP

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cesaro/log_math.hpp"
#include "cesaro/scalar.hpp"
#include "cesaro/trend.hpp"

namespace cesaro {

enum class Generator { linear, power, sqrt, log, partial_sum, tower, rsw_b, s1_empty, table };

/// How a `table` sequence continues past its explicit values.
enum class TailRule { none, arithmetic, geometric };

/// A point of an alpha-sequence far beyond any float-representable index,
/// available in log form because the generator has a closed form there.
struct StructuralProbe {
  double log_index;     // log n
  double alpha;         // alpha_n
  double alpha_before;  // alpha_{n-1}
};

/// A strictly increasing, positive, divergent sequence alpha_1, alpha_2, ...
/// defining the space Lambda_0(alpha).
///
/// Values are memoized; copies share the cache, which is safe for concurrent
/// readers and extenders.
class AlphaSequence {
 public:
  static AlphaSequence linear();
  static AlphaSequence power(double beta);
  static AlphaSequence sqrt();
  static AlphaSequence log(double beta);
  static AlphaSequence partial_sum(double beta);
  static AlphaSequence tower();
  static AlphaSequence rsw_b();
  static AlphaSequence s1_empty();
  static AlphaSequence table(std::vector<double> values, TailRule tail = TailRule::arithmetic);

  /// Parses the generator grammar: `linear`, `power:beta=<r>`, `sqrt`,
  /// `log:beta=<r>`, `psum:beta=<r>`, `tower`, `rsw_b`, `s1_empty`,
  /// `table:[v1,v2,...]` (optionally followed by `:tail=none|arith|geom`).
  static AlphaSequence parse(std::string_view spec);

  Generator generator() const { return gen_; }
  double beta() const { return beta_; }
  std::string descriptor() const;

  /// alpha_n for n >= 1. Throws RepresentationError when alpha_n is not a finite double.
  double value(long n) const;
  /// log(alpha_n); finite wherever the generator is defined, including past float overflow.
  double log_value(long n) const;
  /// alpha_1 .. alpha_N.
  std::vector<double> values(long N) const;

  /// False when alpha_1 <= 1 (accepted, but outside the usual normalisation).
  bool first_term_above_one() const;
  /// Largest n with a finite double alpha_n.
  long max_float_index() const;
  /// Diagnostic resolution used when the caller does not choose one.
  long default_resolution() const;
  /// Clamps a requested resolution to what the representation supports.
  long resolution(long requested) const;

  std::vector<StructuralProbe> structural_probes() const;

  /// alpha at the real index n = exp(log_n) from the generator's closed form
  /// or asymptotic expansion; may be +inf. Empty when no such form exists.
  std::optional<double> alpha_at_log_index(double log_n) const;

 private:
  struct Cache;
  AlphaSequence(Generator gen, double beta, std::vector<double> table = {}, TailRule tail = TailRule::none);
  double compute(long n) const;
  void extend(long N) const;

  Generator gen_;
  double beta_ = 0.0;
  std::vector<double> table_;
  TailRule tail_ = TailRule::none;
  std::shared_ptr<Cache> cache_;
};

enum class WeightMode { exact_log, float_ };

/// Weights w_k(n) = exp(-alpha_n / k); log w_k(n) = -alpha_n / k is the
/// primary representation.
class WeightSystem {
 public:
  explicit WeightSystem(AlphaSequence alpha, WeightMode mode = WeightMode::exact_log)
      : alpha_(std::move(alpha)), mode_(mode) {}

  const AlphaSequence& alpha() const { return alpha_; }
  WeightMode mode() const { return mode_; }

  double log_weight(int k, long n) const { return -alpha_.value(n) / k; }
  /// In float mode an underflow to zero is a RepresentationError.
  double weight(int k, long n) const;

 private:
  AlphaSequence alpha_;
  WeightMode mode_;
};

/// log p_k(x) over the prefix x_1..x_len, with p_k(x) = max_n w_k(n)|x_n|.
template <typename Scalar>
double log_seminorm(const WeightSystem& w, int k, const Vector<Scalar>& x, Eigen::Index len = -1) {
  if (len < 0) len = x.size();
  double best = kNegInf;
  for (Eigen::Index i = 0; i < len; ++i) {
    const double la = log_abs(x(i));
    if (la == kNegInf) continue;
    best = std::max(best, la + w.log_weight(k, static_cast<long>(i) + 1));
  }
  return best;
}

/// Truncated seminorm p_k on a finite prefix. Zero for the zero vector.
template <typename Scalar>
double seminorm(const WeightSystem& w, int k, const Vector<Scalar>& x, Eigen::Index len = -1) {
  return std::exp(log_seminorm(w, k, x, len));
}

std::vector<double> alpha_values(const AlphaSequence& seq, long N);

/// lim log n / alpha_n = 0, judged on a geometric ladder up to N.
Verdict nuclearity_check(const AlphaSequence& seq, long N, const TrendTolerances& tol = {});

struct VAlpha {
  double infimum;
  long argmin;
  Verdict verdict;  // holds iff the gap infimum stays positive
};

VAlpha v_alpha(const AlphaSequence& seq, long N, const TrendTolerances& tol = {});

/// limsup alpha_{n+1} / alpha_n < infinity.
Verdict shift_stability_check(const AlphaSequence& seq, long N, const TrendTolerances& tol = {});

struct SkOptions {
  /// Terms with log-log slope above -1 - fail_margin do not decay faster than 1/n.
  double fail_margin = 0.005;
  /// Terms with log-log slope below -1 - hold_margin are summable.
  double hold_margin = 0.02;
  /// Terms are exponentiated into the compensated sum only below this size.
  double term_cap = 1e3;
  TrendTolerances trend{};
};

/// Whether sum_n exp(alpha_n / k) / n^s converges, i.e. s in S_k(alpha).
Verdict sk_convergence(const AlphaSequence& seq, int k, double s, long N, const SkOptions& opt = {});

class EmptySkError : public Error {
 public:
  using Error::Error;
};

struct S0Interval {
  double lo;
  double hi;
  Verdict at_lo;
  Verdict at_hi;
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// Brackets s_0(k) = inf S_k(alpha) by bisection on [1, s_cap].
/// Throws EmptySkError when s_cap is not in S_k at this resolution and
/// ConsistencyError when s = 1 is (s_0(k) >= 1 always).
S0Interval s0_estimate(const AlphaSequence& seq, int k, long N, double tol, double s_cap = 50.0,
                       const SkOptions& opt = {});

}  // namespace cesaro

#endif  // CESARO_SEQUENCES_HPP

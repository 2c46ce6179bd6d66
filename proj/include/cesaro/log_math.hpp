#ifndef CESARO_LOG_MATH_HPP
#define CESARO_LOG_MATH_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cesaro {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

/// Streaming log(sum exp(x_i)).
class LogSum {
 public:
  void add(double x) {
    if (x == kNegInf) return;
    if (x <= max_) {
      sum_ += std::exp(x - max_);
    } else {
      sum_ = sum_ * std::exp(max_ - x) + 1.0;
      max_ = x;
    }
  }
  double value() const { return max_ == kNegInf ? kNegInf : max_ + std::log(sum_); }

 private:
  double max_ = kNegInf;
  double sum_ = 0.0;
};

/// log(n!) for 0 <= n <= size-1, built by compensated summation of log j.
class LogFactorials {
 public:
  explicit LogFactorials(long max_n) : table_(static_cast<std::size_t>(max_n) + 1, 0.0) {
    double sum = 0.0;
    double comp = 0.0;
    for (long j = 2; j <= max_n; ++j) {
      const double y = std::log(static_cast<double>(j)) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      table_[static_cast<std::size_t>(j)] = sum;
    }
  }
  double operator()(long n) const { return table_[static_cast<std::size_t>(n)]; }
  double binomial(long n, long k) const {
    if (k < 0 || k > n) return kNegInf;
    return (*this)(n) - (*this)(k) - (*this)(n - k);
  }
  long max_n() const { return static_cast<long>(table_.size()) - 1; }

 private:
  std::vector<double> table_;
};

inline double log_binomial(long n, long k) {
  if (k < 0 || k > n) return kNegInf;
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace cesaro

#endif  // CESARO_LOG_MATH_HPP

#include "cesaro/trend.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cesaro/log_math.hpp"

namespace cesaro {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::holds:
      return "holds";
    case Outcome::fails:
      return "fails";
    case Outcome::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict Verdict::holding(std::string trend, std::vector<Sample> evidence) {
  Verdict v;
  v.outcome = Outcome::holds;
  v.trend = std::move(trend);
  v.evidence = std::move(evidence);
  return v;
}

Verdict Verdict::failing(Witness witness, std::string trend, std::vector<Sample> evidence) {
  Verdict v;
  v.outcome = Outcome::fails;
  v.witness = std::move(witness);
  v.trend = std::move(trend);
  v.evidence = std::move(evidence);
  return v;
}

Verdict Verdict::inconclusive(std::string reason, std::string trend, std::vector<Sample> evidence) {
  Verdict v;
  v.outcome = Outcome::inconclusive;
  v.reason = reason.empty() ? "unspecified" : std::move(reason);
  v.trend = std::move(trend);
  v.evidence = std::move(evidence);
  return v;
}

Verdict& Verdict::with(std::string key, double value) {
  for (auto& [k, v] : params) {
    if (k == key) {
      v = value;
      return *this;
    }
  }
  params.emplace_back(std::move(key), value);
  return *this;
}

std::optional<double> Verdict::param(std::string_view key) const {
  for (const auto& [k, v] : params)
    if (k == key) return v;
  return std::nullopt;
}

std::vector<long> geometric_ladder(long N, long start) {
  if (N < 1) throw std::invalid_argument("ladder resolution must be >= 1");
  std::vector<long> out;
  for (int j = 0;; ++j) {
    const long n = static_cast<long>(std::ceil(std::exp2(j / 2.0)));
    if (n > N) break;
    if (n >= start && (out.empty() || out.back() != n)) out.push_back(n);
  }
  if (out.empty() || out.back() != N) out.push_back(N);
  return out;
}

std::vector<Sample> make_samples(std::span<const long> n, std::span<const double> values) {
  std::vector<Sample> out;
  out.reserve(n.size());
  for (std::size_t i = 0; i < n.size() && i < values.size(); ++i)
    out.push_back({static_cast<double>(n[i]), values[i]});
  return out;
}

namespace {

double tail_slope(std::span<const long> n, std::span<const double> v, std::size_t first) {
  const std::size_t last = v.size() - 1;
  const double dx = std::log(static_cast<double>(n[last])) - std::log(static_cast<double>(n[first]));
  if (dx <= 0.0) return 0.0;
  return (v[last] - v[first]) / dx;
}

bool strictly(std::span<const double> v, std::size_t first, bool increasing) {
  for (std::size_t i = first; i + 1 < v.size(); ++i) {
    if (increasing ? !(v[i + 1] > v[i]) : !(v[i + 1] < v[i])) return false;
  }
  return true;
}

}  // namespace

DecayClass classify_decay(std::span<const long> n, std::span<const double> log_values,
                          const TrendTolerances& tol) {
  assert(n.size() == log_values.size());
  DecayClass out;
  if (log_values.size() < tol.tail) {
    out.label = "inconclusive";
    out.reason = "fewer ladder samples than the tail length";
    return out;
  }
  const std::size_t first = log_values.size() - tol.tail;
  auto tail = log_values.subspan(first);

  if (tail.back() == kNegInf) {
    out.trend = DecayTrend::vanishing;
    out.label = "->0";
    out.slope = -std::numeric_limits<double>::infinity();
    return out;
  }

  double peak = kNegInf;
  for (double v : log_values)
    if (std::isfinite(v)) peak = std::max(peak, v);

  const auto [lo, hi] = std::minmax_element(tail.begin(), tail.end());
  const double spread = *hi - *lo;
  double mean = 0.0;
  for (double v : tail) mean += v;
  mean /= static_cast<double>(tail.size());
  out.slope = tail_slope(n, log_values, first);

  if (std::isfinite(spread) && spread <= std::log1p(tol.stable_band)) {
    if (mean - peak <= std::log(tol.rel_trend)) {
      out.label = "inconclusive";
      out.reason = "flat tail far below its peak: decay and a small positive limit are not separable";
      return out;
    }
    out.trend = DecayTrend::limit;
    out.limit = std::exp(mean);
    out.label = "->positive limit";
    return out;
  }
  if (strictly(log_values, first, false)) {
    if (out.slope <= -tol.decay_slope || tail.back() - peak <= std::log(tol.rel_trend)) {
      out.trend = DecayTrend::vanishing;
      out.label = "->0";
      return out;
    }
    out.label = "inconclusive";
    out.reason = "tail decreasing too slowly to separate decay from a positive limit";
    return out;
  }
  if (strictly(log_values, first, true)) {
    if (out.slope >= tol.growth_slope) {
      out.trend = DecayTrend::growing;
      out.label = "non-convergent (increasing)";
      return out;
    }
    out.label = "inconclusive";
    out.reason = "tail increasing below the growth-slope threshold";
    return out;
  }
  out.label = "inconclusive";
  out.reason = "non-monotone tail";
  return out;
}

SupClass classify_sup(std::span<const long> n, std::span<const double> values,
                      std::span<const double> running_max, const TrendTolerances& tol) {
  assert(n.size() == values.size());
  SupClass out;
  std::vector<double> sup(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double prev = i == 0 ? kNegInf : sup[i - 1];
    const double here = running_max.empty() ? values[i] : std::max(values[i], running_max[i]);
    sup[i] = std::max(prev, here);
  }
  if (values.empty()) {
    out.label = "inconclusive";
    out.reason = "no samples";
    return out;
  }
  // Index of the overall maximum among ladder samples.
  std::size_t arg = 0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] > values[arg]) arg = i;
  out.sup = sup.back();
  out.argmax = n[arg];

  const double overflow = std::log(std::numeric_limits<double>::max() / tol.overflow_headroom);
  for (std::size_t i = 0; i < values.size(); ++i) {
    // Quantities in log form overflow when their exponential would.
    if (values[i] > overflow || (std::isinf(values[i]) && values[i] > 0)) {
      out.trend = SupTrend::unbounded;
      out.argmax = n[i];
      out.label = "unbounded (overflow headroom)";
      return out;
    }
  }
  if (values.size() < tol.tail) {
    out.label = "inconclusive";
    out.reason = "fewer ladder samples than the tail length";
    return out;
  }
  const std::size_t first = values.size() - tol.tail;
  out.slope = tail_slope(n, values, first);

  if (strictly(values, first, true) && values.back() >= sup.back() && out.slope >= tol.growth_slope) {
    const auto rate = [&](std::size_t i) {
      return (values[i + 1] - values[i]) /
             (std::log(static_cast<double>(n[i + 1])) - std::log(static_cast<double>(n[i])));
    };
    const double first_rate = rate(first);
    const double last_rate = rate(values.size() - 2);
    if (last_rate >= 0.5 * first_rate) {
      out.trend = SupTrend::unbounded;
      out.argmax = n.back();
      out.label = "unbounded (growing tail)";
      return out;
    }
  }
  const double band = std::log1p(tol.stable_band);
  const std::size_t mid = values.size() / 2;
  if (sup.back() - sup[mid] <= band) {
    out.trend = SupTrend::bounded;
    out.label = "bounded (running sup flat over last half of ladder)";
    return out;
  }
  const std::size_t quarter = (3 * values.size()) / 4;
  if (sup.back() - sup[quarter] <= band && strictly(values, first, false)) {
    out.trend = SupTrend::bounded;
    out.label = "bounded (sup attained before last quarter, tail decreasing)";
    return out;
  }
  // Increments of the running sup shrinking geometrically bound what is left to gain.
  {
    bool geometric = true;
    double ratio = 0.0;
    for (std::size_t i = first; i + 2 < sup.size() && geometric; ++i) {
      const double d0 = sup[i + 1] - sup[i];
      const double d1 = sup[i + 2] - sup[i + 1];
      if (d0 <= 0.0) {
        geometric = d1 <= 0.0;
        continue;
      }
      ratio = std::max(ratio, d1 / d0);
    }
    const double last = sup[sup.size() - 1] - sup[sup.size() - 2];
    if (geometric && ratio <= tol.geometric_ratio && last * ratio / (1.0 - ratio) <= band) {
      out.trend = SupTrend::bounded;
      out.label = "bounded (running sup increments decay geometrically)";
      return out;
    }
  }
  out.label = "inconclusive";
  out.reason = "running sup still moving but tail growth not established";
  return out;
}

}  // namespace cesaro

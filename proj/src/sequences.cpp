#include "cesaro/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

namespace cesaro {

struct AlphaSequence::Cache {
  std::shared_mutex mutex;
  std::vector<double> values;
  // Neumaier state for the running partial sum generator.
  double sum = 0.0;
  double comp = 0.0;
};

namespace {

constexpr long kTowerMaxFloat = 143;
constexpr long kTowerResolution = 30;
constexpr long kDefaultResolution = 10000;

// log j(k) for the s1_empty breakpoints: j(1) = 1, j(k+1) = 2(k+1) j(k)^k.
std::vector<double> breakpoint_logs() {
  std::vector<double> out{0.0};  // k = 1
  for (int k = 1;; ++k) {
    const double next = std::log(2.0 * (k + 1)) + k * out.back();
    if (!(next * (k + 1) < 1e300)) break;
    out.push_back(next);
  }
  return out;
}

double gamma_term(long n) { return 3.0 - 1.0 / (static_cast<double>(n) + 1.0); }

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

double parse_beta(std::string_view name, std::string_view rest) {
  const std::string body = trim(rest);
  if (body.rfind("beta=", 0) != 0)
    throw std::invalid_argument("generator '" + std::string(name) + "' expects beta=<r>");
  const std::string num = body.substr(5);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(num, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != num.size() || !std::isfinite(v))
    throw std::invalid_argument("invalid beta '" + num + "' for generator '" + std::string(name) + "'");
  return v;
}

}  // namespace

AlphaSequence::AlphaSequence(Generator gen, double beta, std::vector<double> table, TailRule tail)
    : gen_(gen), beta_(beta), table_(std::move(table)), tail_(tail), cache_(std::make_shared<Cache>()) {}

AlphaSequence AlphaSequence::linear() { return {Generator::linear, 0.0}; }

AlphaSequence AlphaSequence::power(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("power generator needs beta > 0");
  return {Generator::power, beta};
}

AlphaSequence AlphaSequence::sqrt() { return {Generator::sqrt, 0.5}; }

AlphaSequence AlphaSequence::log(double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("log generator needs beta > 0");
  return {Generator::log, beta};
}

AlphaSequence AlphaSequence::partial_sum(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("psum generator needs 0 < beta < 1");
  return {Generator::partial_sum, beta};
}

AlphaSequence AlphaSequence::tower() { return {Generator::tower, 0.0}; }
AlphaSequence AlphaSequence::rsw_b() { return {Generator::rsw_b, 0.0}; }
AlphaSequence AlphaSequence::s1_empty() { return {Generator::s1_empty, 0.0}; }

AlphaSequence AlphaSequence::table(std::vector<double> values, TailRule tail) {
  if (values.empty()) throw std::invalid_argument("table generator needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i]) || values[i] <= 0.0)
      throw std::invalid_argument("table values must be finite and positive");
    if (i > 0 && !(values[i] > values[i - 1]))
      throw std::invalid_argument("table values must be strictly increasing (index " + std::to_string(i + 1) + ")");
  }
  if (tail != TailRule::none && values.size() < 2)
    throw std::invalid_argument("a table tail rule needs at least two table values");
  return {Generator::table, 0.0, std::move(values), tail};
}

AlphaSequence AlphaSequence::parse(std::string_view spec) {
  const std::string s = trim(spec);
  const auto colon = s.find(':');
  const std::string name = s.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : s.substr(colon + 1);
  const auto no_params = [&](AlphaSequence seq) {
    if (colon != std::string::npos) throw std::invalid_argument("generator '" + name + "' takes no parameters");
    return seq;
  };
  if (name == "linear") return no_params(linear());
  if (name == "sqrt") return no_params(sqrt());
  if (name == "tower") return no_params(tower());
  if (name == "rsw_b") return no_params(rsw_b());
  if (name == "s1_empty") return no_params(s1_empty());
  if (name == "power") return power(parse_beta(name, rest));
  if (name == "log") return log(parse_beta(name, rest));
  if (name == "psum") return partial_sum(parse_beta(name, rest));
  if (name == "table") {
    const auto open = rest.find('[');
    const auto close = rest.find(']');
    if (open != 0 || close == std::string::npos)
      throw std::invalid_argument("table generator expects table:[v1,v2,...]");
    std::vector<double> values;
    std::stringstream list(rest.substr(1, close - 1));
    std::string item;
    while (std::getline(list, item, ',')) {
      const std::string t = trim(item);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(t, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != t.size()) throw std::invalid_argument("invalid table value '" + t + "'");
      values.push_back(v);
    }
    TailRule tail = TailRule::arithmetic;
    const std::string suffix = trim(rest.substr(close + 1));
    if (!suffix.empty()) {
      if (suffix == ":tail=none")
        tail = TailRule::none;
      else if (suffix == ":tail=arith")
        tail = TailRule::arithmetic;
      else if (suffix == ":tail=geom")
        tail = TailRule::geometric;
      else
        throw std::invalid_argument("unknown table tail rule '" + suffix + "'");
    }
    return table(std::move(values), tail);
  }
  throw std::invalid_argument("unknown alpha generator '" + name + "'");
}

std::string AlphaSequence::descriptor() const {
  const auto beta = [&] { return "beta=" + format_double(beta_); };
  switch (gen_) {
    case Generator::linear:
      return "linear";
    case Generator::power:
      return "power:" + beta();
    case Generator::sqrt:
      return "sqrt";
    case Generator::log:
      return "log:" + beta();
    case Generator::partial_sum:
      return "psum:" + beta();
    case Generator::tower:
      return "tower";
    case Generator::rsw_b:
      return "rsw_b";
    case Generator::s1_empty:
      return "s1_empty";
    case Generator::table: {
      std::string out = "table:[";
      for (std::size_t i = 0; i < table_.size(); ++i) {
        if (i) out += ',';
        out += format_double(table_[i]);
      }
      out += ']';
      if (tail_ == TailRule::none) out += ":tail=none";
      if (tail_ == TailRule::geometric) out += ":tail=geom";
      return out;
    }
  }
  return "unknown";
}

long AlphaSequence::max_float_index() const {
  if (gen_ == Generator::tower) return kTowerMaxFloat;
  if (gen_ == Generator::table && tail_ == TailRule::none) return static_cast<long>(table_.size());
  return std::numeric_limits<long>::max();
}

long AlphaSequence::default_resolution() const {
  if (gen_ == Generator::tower) return kTowerResolution;
  if (gen_ == Generator::table && tail_ == TailRule::none)
    return std::min<long>(kDefaultResolution, static_cast<long>(table_.size()));
  return kDefaultResolution;
}

long AlphaSequence::resolution(long requested) const { return std::min(requested, max_float_index()); }

bool AlphaSequence::first_term_above_one() const { return value(1) > 1.0; }

double AlphaSequence::compute(long n) const {
  const double x = static_cast<double>(n);
  switch (gen_) {
    case Generator::linear:
      return x;
    case Generator::power:
      return std::pow(x, beta_);
    case Generator::sqrt:
      return std::sqrt(x);
    case Generator::log:
      return beta_ * std::log1p(x);
    case Generator::tower:
      return std::pow(x, x);
    case Generator::rsw_b:
      if (n == 1) return 2.0;
      return n % 2 == 0 ? 1.5 * x : 1.5 * (x - 1.0) + 2.0;
    case Generator::s1_empty: {
      // Breakpoints j(1..4); j(5) is far beyond any long.
      static constexpr long j[] = {1, 4, 96, 7077888};
      int k = 1;
      while (k < 4 && n >= j[k]) ++k;
      const double beta = k * std::pow(static_cast<double>(j[k - 1]), k);
      return std::log(beta + gamma_term(n));
    }
    case Generator::table: {
      const auto m = static_cast<long>(table_.size());
      if (n <= m) return table_[static_cast<std::size_t>(n - 1)];
      const double last = table_.back();
      const double prev = table_[table_.size() - 2];
      if (tail_ == TailRule::arithmetic) return last + static_cast<double>(n - m) * (last - prev);
      return last * std::pow(last / prev, static_cast<double>(n - m));
    }
    case Generator::partial_sum:
      break;
  }
  throw std::logic_error("compute() called for a cumulative generator");
}

void AlphaSequence::extend(long N) const {
  {
    std::shared_lock lock(cache_->mutex);
    if (static_cast<long>(cache_->values.size()) >= N) return;
  }
  std::unique_lock lock(cache_->mutex);
  auto& c = *cache_;
  c.values.reserve(static_cast<std::size_t>(N));
  for (long n = static_cast<long>(c.values.size()) + 1; n <= N; ++n) {
    if (gen_ == Generator::partial_sum) {
      const double term = std::pow(static_cast<double>(n), -beta_);
      const double t = c.sum + term;
      c.comp += std::abs(c.sum) >= std::abs(term) ? (c.sum - t) + term : (term - t) + c.sum;
      c.sum = t;
      c.values.push_back(c.sum + c.comp);
    } else {
      c.values.push_back(compute(n));
    }
  }
}

double AlphaSequence::value(long n) const {
  if (n < 1) throw std::out_of_range("alpha index must be >= 1");
  if (n > max_float_index()) {
    if (gen_ == Generator::tower)
      throw RepresentationError("tower alpha_" + std::to_string(n) + " = n^n overflows a double; use log_value");
    throw RepresentationError("table alpha_" + std::to_string(n) + " lies beyond the table and no tail rule is set");
  }
  {
    std::shared_lock lock(cache_->mutex);
    if (n <= static_cast<long>(cache_->values.size())) return cache_->values[static_cast<std::size_t>(n - 1)];
  }
  if (gen_ == Generator::partial_sum) {
    extend(n);
    std::shared_lock lock(cache_->mutex);
    return cache_->values[static_cast<std::size_t>(n - 1)];
  }
  const double v = compute(n);
  if (!std::isfinite(v)) throw RepresentationError("alpha_" + std::to_string(n) + " is not a finite double");
  return v;
}

double AlphaSequence::log_value(long n) const {
  if (n < 1) throw std::out_of_range("alpha index must be >= 1");
  if (gen_ == Generator::tower) return static_cast<double>(n) * std::log(static_cast<double>(n));
  if (gen_ == Generator::table && tail_ == TailRule::geometric && n > static_cast<long>(table_.size())) {
    const double last = table_.back();
    const double prev = table_[table_.size() - 2];
    return std::log(last) + static_cast<double>(n - static_cast<long>(table_.size())) * std::log(last / prev);
  }
  return std::log(value(n));
}

std::vector<double> AlphaSequence::values(long N) const {
  if (N < 1) throw std::invalid_argument("resolution must be >= 1");
  if (N > max_float_index()) (void)value(N);  // throws the representation error
  extend(N);
  std::shared_lock lock(cache_->mutex);
  std::vector<double> out(cache_->values.begin(), cache_->values.begin() + N);
  for (long n = 0; n < N; ++n)
    if (!std::isfinite(out[static_cast<std::size_t>(n)]))
      throw RepresentationError("alpha_" + std::to_string(n + 1) + " is not a finite double");
  return out;
}

std::vector<StructuralProbe> AlphaSequence::structural_probes() const {
  std::vector<StructuralProbe> out;
  if (gen_ != Generator::s1_empty) return out;
  const auto logs = breakpoint_logs();
  // At n = j(k): alpha = log(k j(k)^k + gamma), and alpha_{n-1} sits on the previous plateau.
  for (std::size_t i = 1; i < logs.size(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double alpha = std::log(k) + k * logs[i];
    const double before = std::log(k - 1.0) + (k - 1.0) * logs[i - 1];
    out.push_back({logs[i], alpha, log_add(before, std::log(3.0))});
  }
  return out;
}

std::optional<double> AlphaSequence::alpha_at_log_index(double log_n) const {
  const double inf = std::numeric_limits<double>::infinity();
  const double n = std::exp(log_n);
  switch (gen_) {
    case Generator::linear:
      return n;
    case Generator::power:
      return std::exp(beta_ * log_n);
    case Generator::sqrt:
      return std::exp(0.5 * log_n);
    case Generator::log:
      return beta_ * (log_n + std::log1p(std::exp(-log_n)));
    case Generator::tower:
      return log_n > 6.0 ? inf : std::exp(n * log_n);
    case Generator::rsw_b:
      return 1.5 * n + 1.0;
    case Generator::partial_sum:
      // Euler-Maclaurin: zeta(beta) + n^(1-beta)/(1-beta) + n^(-beta)/2 + O(n^(-beta-1)).
      return boost::math::zeta(beta_) + std::exp((1.0 - beta_) * log_n) / (1.0 - beta_) +
             0.5 * std::exp(-beta_ * log_n);
    case Generator::s1_empty: {
      static const std::vector<double> logs = breakpoint_logs();
      std::size_t k = 1;
      while (k < logs.size() && log_n >= logs[k]) ++k;
      if (k == logs.size()) return inf;
      return std::log(static_cast<double>(k)) + static_cast<double>(k) * logs[k - 1];
    }
    case Generator::table: {
      if (tail_ == TailRule::none) return std::nullopt;
      const double m = static_cast<double>(table_.size());
      const double last = table_.back();
      const double prev = table_[table_.size() - 2];
      if (tail_ == TailRule::arithmetic) return last + (n - m) * (last - prev);
      return std::exp(std::log(last) + (n - m) * std::log(last / prev));
    }
  }
  return std::nullopt;
}

double WeightSystem::weight(int k, long n) const {
  const double w = std::exp(log_weight(k, n));
  if (mode_ == WeightMode::float_ && w == 0.0)
    throw RepresentationError("w_" + std::to_string(k) + "(" + std::to_string(n) + ") underflows in float mode");
  return w;
}

std::vector<double> alpha_values(const AlphaSequence& seq, long N) { return seq.values(N); }

Verdict nuclearity_check(const AlphaSequence& seq, long N, const TrendTolerances& tol) {
  const auto ladder = geometric_ladder(N, 2);
  std::vector<double> logq;
  std::vector<double> q;
  for (long n : ladder) {
    const double l = std::log(std::log(static_cast<double>(n))) - seq.log_value(n);
    logq.push_back(l);
    q.push_back(std::exp(l));
  }
  const auto cls = classify_decay(ladder, logq, tol);
  auto samples = make_samples(ladder, q);
  Verdict v;
  switch (cls.trend) {
    case DecayTrend::vanishing:
      v = Verdict::holding(cls.label, std::move(samples));
      break;
    case DecayTrend::limit:
      v = Verdict::failing({"n", static_cast<double>(ladder.back())}, cls.label, std::move(samples));
      v.with("limit", cls.limit);
      break;
    case DecayTrend::growing:
      v = Verdict::failing({"n", static_cast<double>(ladder.back())}, cls.label, std::move(samples));
      break;
    case DecayTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason, cls.label, std::move(samples));
      break;
  }
  v.with("slope", cls.slope);
  return v;
}

VAlpha v_alpha(const AlphaSequence& seq, long N, const TrendTolerances& tol) {
  if (N < 2) throw std::invalid_argument("v_alpha needs N >= 2");
  const auto alpha = seq.values(N);
  const auto ladder = geometric_ladder(N - 1);
  std::vector<double> running;
  std::vector<double> log_running;
  double inf = std::numeric_limits<double>::infinity();
  long argmin = 1;
  std::size_t next = 0;
  for (long n = 1; n < N; ++n) {
    const double gap = alpha[static_cast<std::size_t>(n)] - alpha[static_cast<std::size_t>(n - 1)];
    if (gap < inf) {
      inf = gap;
      argmin = n;
    }
    if (next < ladder.size() && ladder[next] == n) {
      running.push_back(inf);
      log_running.push_back(inf > 0.0 ? std::log(inf) : kNegInf);
      ++next;
    }
  }
  const auto cls = classify_decay(ladder, log_running, tol);
  auto samples = make_samples(ladder, running);
  Verdict v;
  switch (cls.trend) {
    case DecayTrend::vanishing:
      v = Verdict::failing({"n", static_cast<double>(argmin)}, cls.label, std::move(samples));
      break;
    case DecayTrend::limit:
      v = Verdict::holding(cls.label, std::move(samples));
      break;
    case DecayTrend::growing:
    case DecayTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason.empty() ? "running infimum not classifiable" : cls.reason, cls.label,
                                std::move(samples));
      break;
  }
  v.with("infimum", inf).with("argmin", static_cast<double>(argmin));
  return {inf, argmin, std::move(v)};
}

Verdict shift_stability_check(const AlphaSequence& seq, long N, const TrendTolerances& tol) {
  if (N < 2) throw std::invalid_argument("shift stability needs N >= 2");
  const auto ladder = geometric_ladder(N - 1);
  std::vector<double> values;
  std::vector<double> running;
  double sup = kNegInf;
  double prev = seq.log_value(1);
  std::size_t next = 0;
  for (long n = 1; n < N; ++n) {
    const double cur = seq.log_value(n + 1);
    const double r = cur - prev;
    prev = cur;
    sup = std::max(sup, r);
    if (next < ladder.size() && ladder[next] == n) {
      values.push_back(r);
      running.push_back(sup);
      ++next;
    }
  }
  auto cls = classify_sup(ladder, values, running, tol);
  std::vector<double> ratios;
  for (double r : running) ratios.push_back(std::exp(r));
  auto samples = make_samples(ladder, ratios);

  // Points past the resolution where the closed form is still available.
  const double log_n = std::log(static_cast<double>(N));
  std::vector<double> probe_ratios;
  double first_probe = log_n;
  for (const auto& p : seq.structural_probes()) {
    if (p.log_index <= log_n) continue;
    if (probe_ratios.empty()) first_probe = p.log_index;
    probe_ratios.push_back(std::log(p.alpha) - std::log(p.alpha_before));
  }
  if (probe_ratios.size() >= 2 && std::is_sorted(probe_ratios.begin(), probe_ratios.end()) &&
      probe_ratios.back() > sup + std::log1p(tol.stable_band)) {
    Verdict v = Verdict::failing({"log_n", first_probe}, "unbounded along structural subsequence", std::move(samples));
    v.with("probe_log_ratio", probe_ratios.back());
    return v;
  }

  Verdict v;
  switch (cls.trend) {
    case SupTrend::bounded:
      v = Verdict::holding(cls.label, std::move(samples));
      v.with("sup_ratio", std::exp(cls.sup));
      break;
    case SupTrend::unbounded:
      v = Verdict::failing({"n", static_cast<double>(cls.argmax)}, cls.label, std::move(samples));
      break;
    case SupTrend::inconclusive:
      v = Verdict::inconclusive(cls.reason, cls.label, std::move(samples));
      break;
  }
  v.with("log_sup_ratio", cls.sup);
  return v;
}

Verdict sk_convergence(const AlphaSequence& seq, int k, double s, long N, const SkOptions& opt) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  N = seq.resolution(N);
  const auto ladder = geometric_ladder(N);
  const double log_cap = std::log(opt.term_cap);
  const auto log_term = [&](long n) { return seq.value(n) / k - s * std::log(static_cast<double>(n)); };

  // Neumaier sum of small terms; large ones go through a log-sum.
  double sum = 0.0;
  double comp = 0.0;
  LogSum big;
  double prev = kNegInf;
  std::vector<double> ladder_terms;
  std::size_t next = 0;
  for (long n = 1; n <= N; ++n) {
    const double lt = log_term(n);
    if (lt > log_cap && lt > prev && n > 1) {
      auto v = Verdict::failing({"n", static_cast<double>(n)}, "terms unbounded", make_samples(ladder, ladder_terms));
      v.with("log_term", lt).with("s", s).with("k", k);
      return v;
    }
    if (lt > log_cap) {
      big.add(lt);
    } else {
      const double term = std::exp(lt);
      const double t = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    prev = lt;
    if (next < ladder.size() && ladder[next] == n) {
      ladder_terms.push_back(lt);
      ++next;
    }
  }
  const double partial = std::exp(log_add(std::log(sum + comp), big.value()));
  auto samples = make_samples(ladder, ladder_terms);

  // Indices past the resolution, evaluated from closed forms: a doubling
  // ladder up to n = e^690, then the structural breakpoints.
  const double log_n = std::log(static_cast<double>(N));
  std::vector<std::pair<double, double>> probes{{log_n, ladder_terms.back()}};
  for (double L = log_n + std::log(2.0); L < 690.0; L += std::log(2.0)) {
    const auto a = seq.alpha_at_log_index(L);
    if (!a) break;
    probes.emplace_back(L, *a / k - s * L);
  }
  for (const auto& p : seq.structural_probes())
    if (p.log_index > probes.back().first) probes.emplace_back(p.log_index, p.alpha / k - s * p.log_index);
  for (std::size_t i = 1; i < probes.size(); ++i) {
    if (probes[i].second >= 0.0 && probes[i].second > probes[i - 1].second) {
      auto v = Verdict::failing({"log_n", probes[i].first}, "terms unbounded beyond the resolution",
                                std::move(samples));
      v.with("log_term", probes[i].second).with("s", s).with("k", k).with("partial_sum", partial);
      return v;
    }
  }

  const std::size_t tail = std::min(opt.trend.tail, ladder.size());
  const std::size_t first = ladder.size() - tail;
  const double dx = std::log(static_cast<double>(ladder.back())) - std::log(static_cast<double>(ladder[first]));
  const double slope = dx > 0.0 ? (ladder_terms.back() - ladder_terms[first]) / dx : 0.0;

  Verdict v;
  if (slope > -1.0 - opt.fail_margin) {
    v = Verdict::failing({"n", static_cast<double>(N)}, "terms decay no faster than 1/n", std::move(samples));
  } else if (slope < -1.0 - opt.hold_margin) {
    v = Verdict::holding("terms decay like n^" + format_double(slope), std::move(samples));
  } else {
    v = Verdict::inconclusive("tail slope within the margin of the critical exponent -1", "near critical",
                              std::move(samples));
  }
  v.with("slope", slope).with("partial_sum", partial).with("s", s).with("k", k);
  return v;
}

S0Interval s0_estimate(const AlphaSequence& seq, int k, long N, double tol, double s_cap, const SkOptions& opt) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  Verdict hi_v = sk_convergence(seq, k, s_cap, N, opt);
  if (!hi_v.holds())
    throw EmptySkError("S_" + std::to_string(k) + " empty at this resolution (no convergence up to s = " +
                       format_double(s_cap) + ")");
  Verdict lo_v = sk_convergence(seq, k, 1.0, N, opt);
  if (lo_v.holds()) throw ConsistencyError("series converges at s = 1, contradicting s_0(k) >= 1");
  double lo = 1.0;
  double hi = s_cap;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    Verdict m = sk_convergence(seq, k, mid, N, opt);
    if (m.holds()) {
      hi = mid;
      hi_v = std::move(m);
    } else {
      lo = mid;
      lo_v = std::move(m);
    }
  }
  return {lo, hi, std::move(lo_v), std::move(hi_v)};
}

}  // namespace cesaro

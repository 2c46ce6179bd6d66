#ifndef CESARO_DYNAMICS_HPP
#define CESARO_DYNAMICS_HPP

#include <ostream>
#include <vector>

#include "cesaro/operators.hpp"
#include "cesaro/sequences.hpp"
#include "cesaro/trend.hpp"

namespace cesaro {

template <typename S>
struct IterateTrace {
  CoordinateVector<S> x0;
  /// (m, C^m x) for m = 1..M.
  std::vector<std::pair<int, CoordinateVector<S>>> iterates;
  /// seminorms[j][k-1] = p_k(C^j x) for j = 0..M.
  std::vector<std::vector<double>> seminorms;
  /// Predicted limit x_1 * 1.
  S limit;
};

/// C^m x by m running-mean passes; records p_1..p_K when `w` is given.
template <typename S>
IterateTrace<S> power_iterate(const CoordinateVector<S>& x, int m, const WeightSystem* w = nullptr, int K = 0) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  IterateTrace<S> t;
  t.x0 = x;
  t.limit = x.values(0);
  const auto record = [&](const CoordinateVector<S>& y) {
    std::vector<double> p;
    for (int k = 1; w && k <= K; ++k) p.push_back(seminorm(*w, k, y.values, y.valid_len));
    t.seminorms.push_back(std::move(p));
  };
  record(x);
  CoordinateVector<S> y = x;
  for (int j = 1; j <= m; ++j) {
    y = cesaro_apply(y);
    record(y);
    t.iterates.emplace_back(j, y);
  }
  return t;
}

/// C^m x only.
template <typename S>
CoordinateVector<S> power_apply(CoordinateVector<S> x, int m) {
  for (int j = 0; j < m; ++j) x = cesaro_apply(x);
  return x;
}

struct QuadratureSpec {
  double tolerance = 1e-13;
  /// Largest relative error estimate accepted before QuadratureError.
  double acceptance = 1e-10;
  unsigned max_depth = 20;
  /// m = 1 reduces to running means exactly; turn off to exercise the quadrature.
  bool analytic_m1 = true;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved) : Error(what), achieved_(achieved) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

/// Truncation of C^m from the integral representation with kernel log^(m-1)(1/t)/(m-1)!.
Matrix<double> kernel_matrix(int m, Index N, const QuadratureSpec& quad = {});

CoordinateVector<double> iterate_via_kernel(const CoordinateVector<double>& x, int m, const QuadratureSpec& quad = {});

struct GmSup {
  double closed_form;
  double numeric;
  double argmax_t;
};

/// a_m = sup_{t in [0,1]} t f_m(t); closed form checked against golden-section search.
GmSup gm_sup(int m);

template <typename S>
struct MeansTrace {
  /// T_[n] x for n = 1..nmax.
  std::vector<CoordinateVector<S>> means;
  /// distances[n-1][k-1] = p_k(T_[n] x - x_1 1).
  std::vector<std::vector<double>> distances;
};

/// Cesaro means T_[n] x = (1/n) sum_{j<=n} C^j x, built incrementally.
template <typename S>
MeansTrace<S> cesaro_means(const CoordinateVector<S>& x, int nmax, const WeightSystem* w = nullptr, int K = 0) {
  if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
  MeansTrace<S> out;
  CoordinateVector<S> power = x;
  Vector<S> sum = Vector<S>::Constant(x.size(), S(0));
  const S x1 = x.values(0);
  for (int n = 1; n <= nmax; ++n) {
    power = cesaro_apply(power);
    sum += power.values;
    Vector<S> mean = sum;
    for (Index i = 0; i < mean.size(); ++i) mean(i) = mean(i) / ratio<S>(n, 1);
    std::vector<double> d;
    if (w) {
      Vector<S> diff = mean;
      for (Index i = 0; i < diff.size(); ++i) diff(i) -= x1;
      for (int k = 1; k <= K; ++k) d.push_back(seminorm(*w, k, diff, x.valid_len));
    }
    out.means.emplace_back(std::move(mean), x.valid_len);
    out.distances.push_back(std::move(d));
  }
  return out;
}

/// p_k(C^m x) <= p_k(x) for k <= K, m <= M; exact iterates, weights compared in log form.
template <typename S>
Verdict power_bound_check(const WeightSystem& w, const CoordinateVector<S>& x, int K, int M) {
  // The weights are irrational; a few ulps of the log seminorm absorb their rounding.
  constexpr double kUlps = 8.0 * std::numeric_limits<double>::epsilon();
  std::vector<double> base;
  for (int k = 1; k <= K; ++k) base.push_back(log_seminorm(w, k, x.values, x.valid_len));
  CoordinateVector<S> y = x;
  double worst = -std::numeric_limits<double>::infinity();
  for (int m = 1; m <= M; ++m) {
    y = cesaro_apply(y);
    for (int k = 1; k <= K; ++k) {
      const double b = base[static_cast<std::size_t>(k - 1)];
      const double lp = log_seminorm(w, k, y.values, y.valid_len);
      if (b == kNegInf && lp == kNegInf) continue;
      const double excess = lp - b;
      worst = std::max(worst, excess);
      if (excess > kUlps * std::max(1.0, std::abs(b))) {
        Verdict v = Verdict::failing({"k", static_cast<double>(k)}, "p_k(C^m x) exceeds p_k(x)");
        v.with("k", k).with("m", m).with("log_excess", excess);
        return v;
      }
    }
  }
  Verdict v = Verdict::holding("p_k(C^m x) <= p_k(x) for every k <= " + std::to_string(K) + ", m <= " +
                               std::to_string(M));
  v.with("max_log_ratio", worst);
  return v;
}

/// x = x_1 1 + z with z in the range of I - C, verified exactly through B = A^{-1}.
Verdict ergodic_decomposition_check(const AlphaSequence& seq, const CoordinateVector<Rational>& x, Index N);

/// sup over the samples of p_k(T_[n] x - x_1 1) along a ladder in n; holds when it tends to 0.
Verdict mean_ergodic_proxy(const WeightSystem& w, int k, const std::vector<CoordinateVector<double>>& samples,
                           int nmax, const TrendTolerances& tol = {});

inline int m_cap(Index n) { return 20 + 4 * static_cast<int>(n); }

/// For n <= nmax, the first m <= m_cap(n) with |(C^m x)_n - x_1| < tol.
struct IterateLimit {
  std::vector<int> first_m;  // -1 where not reached
  Verdict verdict;
};

IterateLimit iterate_limit_check(const CoordinateVector<double>& x, Index nmax, double tol = 1e-6);

/// Iterate trace as CSV rows m,n,value,p_1..p_K.
template <typename S>
void write_trace_csv(std::ostream& os, const IterateTrace<S>& t) {
  const std::size_t K = t.seminorms.empty() ? 0 : t.seminorms.front().size();
  os << "m,n,value";
  for (std::size_t k = 1; k <= K; ++k) os << ",p_" << k;
  os << '\n';
  for (const auto& [m, y] : t.iterates) {
    for (Index n = 0; n < y.valid_len; ++n) {
      os << m << ',' << n + 1 << ',' << format_scalar(y.values(n));
      for (double p : t.seminorms[static_cast<std::size_t>(m)]) os << ',' << format_double(p);
      os << '\n';
    }
  }
}

}  // namespace cesaro

#endif  // CESARO_DYNAMICS_HPP

#include "cesaro/dynamics.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "cesaro/log_math.hpp"

namespace cesaro {

namespace {

// Maximizer of a unimodal f on [a, b].
template <typename F>
double golden_section_max(F f, double a, double b, double width = 1e-12) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// log of binom(n-1,k-1) e^{-ku} (1-e^{-u})^{n-k} u^{m-1}/(m-1)!
struct LogIntegrand {
  long n, k;
  int m;
  double log_coeff;

  double operator()(double u) const {
    double v = log_coeff - static_cast<double>(k) * u;
    if (n > k) v += static_cast<double>(n - k) * std::log(-std::expm1(-u));
    if (m > 1) v += (m - 1) * std::log(u);
    return v;
  }
};

double kernel_entry(long n, long k, int m, const QuadratureSpec& quad) {
  const LogIntegrand g{n, k, m, log_binomial(n - 1, k - 1) - std::lgamma(static_cast<double>(m))};
  const double hi = 2.0 * (std::log(static_cast<double>(n)) + m + 2.0);
  const double peak = golden_section_max(g, 0.0, hi, 1e-10);
  const double gpeak = g(peak);
  // U: integrand below 1e-16 of its peak; log-concavity makes it monotone past the peak.
  const double cut = gpeak + std::log(1e-16);
  double U = peak + 1.0;
  while (g(U) > cut) U = peak + 2.0 * (U - peak);
  const auto f = [&](double u) { return std::exp(g(u)); };
  // The library's own error estimate is not rescaled to the interval, so the achieved
  // tolerance is measured against a higher-order rule instead.
  const auto integrate = [&](auto rule) {
    using GK = decltype(rule);
    if (peak <= 1e-6) return GK::integrate(f, 0.0, U, quad.max_depth, quad.tolerance);
    return GK::integrate(f, 0.0, peak, quad.max_depth, quad.tolerance) +
           GK::integrate(f, peak, U, quad.max_depth, quad.tolerance);
  };
  const double value = integrate(boost::math::quadrature::gauss_kronrod<double, 31>{});
  const double check = integrate(boost::math::quadrature::gauss_kronrod<double, 61>{});
  const double achieved = std::abs(value - check) / std::abs(check);
  if (!(achieved <= quad.acceptance)) {
    throw QuadratureError("kernel quadrature did not converge at n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                              ", m=" + std::to_string(m) + " (relative error " + format_double(achieved) + ")",
                          achieved);
  }
  return value;
}

}  // namespace

Matrix<double> kernel_matrix(int m, Index N, const QuadratureSpec& quad) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  Matrix<double> K = Matrix<double>::Zero(N, N);
  for (Index n = 1; n <= N; ++n) {
    for (Index k = 1; k <= n; ++k) {
      K(n - 1, k - 1) = m == 1 && quad.analytic_m1 ? 1.0 / static_cast<double>(n) : kernel_entry(n, k, m, quad);
    }
  }
  return K;
}

CoordinateVector<double> iterate_via_kernel(const CoordinateVector<double>& x, int m, const QuadratureSpec& quad) {
  const Index N = x.valid_len;
  Vector<double> y = Vector<double>::Zero(x.size());
  y.head(N) = kernel_matrix(m, N, quad) * x.values.head(N);
  return {std::move(y), N};
}

GmSup gm_sup(int m) {
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  const double lg = std::lgamma(static_cast<double>(m));
  // t = e^{-u}: log g_m = -u + (m-1) log u - log (m-1)!
  const auto h = [&](double u) { return m == 1 ? -u : -u + (m - 1) * std::log(u) - lg; };
  const double closed = m == 1 ? 1.0 : std::exp((m - 1) * (std::log(m - 1.0) - 1.0) - lg);
  const double u = golden_section_max(h, 0.0, 2.0 * m + 10.0);
  const double numeric = std::exp(h(u));
  if (std::abs(closed - numeric) > 1e-10) {
    throw ConsistencyError("a_" + std::to_string(m) + ": closed form " + format_double(closed) +
                           " disagrees with numeric maximum " + format_double(numeric));
  }
  return {closed, numeric, std::exp(-u)};
}

Verdict ergodic_decomposition_check(const AlphaSequence& seq, const CoordinateVector<Rational>& x, Index N) {
  if (N < 2 || x.valid_len < N) throw std::invalid_argument("ergodic check needs 2 <= N <= valid_len");
  const Vector<Rational> xs = x.values.head(N);
  const Rational x1 = xs(0);
  Vector<Rational> z = xs;
  for (Index i = 0; i < N; ++i) z(i) -= x1;

  const auto i_minus_c = [](const Vector<Rational>& v) {
    return Vector<Rational>(v - cesaro_apply(CoordinateVector<Rational>(v)).values);
  };
  if (i_minus_c(xs) != i_minus_c(z)) return Verdict::failing({"step", 1}, "(I - C)x differs from (I - C)z");

  // A = S(I - C)S^{-1}; u = B S z solves A u = S z.
  const Vector<Rational> sz = z.tail(N - 1);
  const Vector<Rational> u = b_matrix<Rational>(N - 1).entries * sz;
  if (a_matrix<Rational>(N - 1).entries * u != sz) return Verdict::failing({"step", 2}, "A u differs from S z");
  Vector<Rational> s_inv_u = Vector<Rational>::Zero(N);
  s_inv_u.tail(N - 1) = u;
  const Vector<Rational> back = i_minus_c(s_inv_u);
  for (Index i = 0; i < N; ++i) {
    if (back(i) != z(i)) return Verdict::failing({"n", static_cast<double>(i + 1)}, "(I - C)S^{-1}u differs from z");
  }
  const WeightSystem w(seq);
  Verdict v = Verdict::holding("x = x_1 1 + (I - C)S^{-1}B S z exactly");
  v.with("N", static_cast<double>(N)).with("x_1", to_double(x1)).with("p_1(z)", seminorm(w, 1, z));
  return v;
}

Verdict mean_ergodic_proxy(const WeightSystem& w, int k, const std::vector<CoordinateVector<double>>& samples, int nmax,
                           const TrendTolerances& tol) {
  std::vector<double> sup(static_cast<std::size_t>(nmax), 0.0);
  for (const auto& x : samples) {
    const auto means = cesaro_means(x, nmax, &w, k);
    for (int n = 0; n < nmax; ++n) {
      sup[static_cast<std::size_t>(n)] =
          std::max(sup[static_cast<std::size_t>(n)], means.distances[static_cast<std::size_t>(n)].back());
    }
  }
  if (std::all_of(sup.begin(), sup.end(), [](double d) { return d == 0.0; })) {
    Verdict v = Verdict::holding("T_[n] x = x_1 1 for every n");
    v.with("k", k).with("samples", static_cast<double>(samples.size()));
    return v;
  }
  const auto ladder = geometric_ladder(nmax);
  std::vector<double> logd;
  std::vector<double> d;
  for (long n : ladder) {
    d.push_back(sup[static_cast<std::size_t>(n - 1)]);
    logd.push_back(std::log(d.back()));
  }
  const auto cls = classify_decay(ladder, logd, tol);
  Verdict v;
  if (cls.trend == DecayTrend::vanishing) {
    v = Verdict::holding("sup distance to x_1 1 " + cls.label, make_samples(ladder, d));
  } else if (cls.trend == DecayTrend::inconclusive) {
    v = Verdict::inconclusive(cls.reason, cls.label, make_samples(ladder, d));
  } else {
    v = Verdict::failing({"n", static_cast<double>(ladder.back())}, "sup distance " + cls.label,
                         make_samples(ladder, d));
  }
  v.with("k", k).with("samples", static_cast<double>(samples.size())).with("slope", cls.slope);
  return v;
}

IterateLimit iterate_limit_check(const CoordinateVector<double>& x, Index nmax, double tol) {
  if (nmax < 1 || nmax > x.valid_len) throw std::invalid_argument("nmax must lie in [1, valid_len]");
  IterateLimit out;
  out.first_m.assign(static_cast<std::size_t>(nmax), -1);
  const double x1 = x.values(0);
  CoordinateVector<double> y = x;
  Index reached = 0;
  for (int m = 1; m <= m_cap(nmax) && reached < nmax; ++m) {
    y = cesaro_apply(y);
    for (Index n = 1; n <= nmax; ++n) {
      int& slot = out.first_m[static_cast<std::size_t>(n - 1)];
      if (slot < 0 && m <= m_cap(n) && std::abs(y.values(n - 1) - x1) < tol) {
        slot = m;
        ++reached;
      }
    }
  }
  for (Index n = 1; n <= nmax; ++n) {
    if (out.first_m[static_cast<std::size_t>(n - 1)] < 0) {
      out.verdict = Verdict::failing({"n", static_cast<double>(n)}, "coordinate not within tol of x_1 by m_cap(n)");
      out.verdict.with("m_cap", m_cap(n)).with("tol", tol);
      return out;
    }
  }
  const int worst = *std::max_element(out.first_m.begin(), out.first_m.end());
  out.verdict = Verdict::holding("every coordinate n <= " + std::to_string(nmax) + " reaches x_1");
  out.verdict.with("max_first_m", worst).with("tol", tol);
  return out;
}

}  // namespace cesaro

#include "cesaro/operators.hpp"

#include <cmath>

namespace cesaro {

std::string_view to_string(Structure s) {
  switch (s) {
    case Structure::lower_triangular:
      return "lower-triangular";
    case Structure::diagonal:
      return "diagonal";
    case Structure::superdiagonal_shift:
      return "superdiagonal-shift";
    case Structure::dense:
      return "dense";
  }
  return "dense";
}

PoleDistance nearest_pole(Complex lambda) {
  PoleDistance best{0, std::abs(lambda)};
  const double x = lambda.real();
  if (x > 0.0) {
    const double inv = 1.0 / x;
    for (double c : {std::floor(inv), std::ceil(inv)}) {
      if (c < 1.0 || c > 1e15) continue;
      const double d = std::abs(lambda - Complex(1.0 / c, 0.0));
      if (d < best.distance) best = {static_cast<long>(c), d};
    }
  }
  return best;
}

void check_pole(Complex lambda, double tol_sigma) {
  const auto p = nearest_pole(lambda);
  if (p.distance < tol_sigma) {
    const std::string pole = p.m == 0 ? "0" : "1/" + std::to_string(p.m);
    throw PoleProximityError("lambda = " + format_scalar(lambda) + " lies within " + format_double(tol_sigma) +
                                 " of the pole " + pole,
                             p.m, p.distance);
  }
}

std::vector<LogComplex> e_row(Complex lambda, long n) {
  std::vector<LogComplex> row(n > 1 ? static_cast<std::size_t>(n - 1) : 0);
  const double log_n = std::log(static_cast<double>(n));
  double L = 0.0;
  double theta = 0.0;
  for (long m = n; m >= 1; --m) {
    const Complex f = 1.0 - 1.0 / (lambda * static_cast<double>(m));
    L += std::log(std::abs(f));
    theta += std::arg(f);
    if (m < n) row[static_cast<std::size_t>(m - 1)] = LogComplex(-log_n - L, -theta);
  }
  return row;
}

TruncOperator<ComplexRational> resolvent_exact(const ComplexRational& lambda, Index N, double tol_sigma) {
  check_pole(lambda.to_complex(), tol_sigma);
  if (lambda == ComplexRational(0)) throw PoleProximityError("lambda = 0 is a pole", 0, 0.0);
  if (lambda.im == 0 && lambda.re > 0) {
    const Rational inv = Rational(1) / lambda.re;
    if (denominator(inv) == 1) {
      const long m = numerator(inv).convert_to<long>();
      throw PoleProximityError("lambda = 1/" + std::to_string(m) + " is a pole", m, 0.0);
    }
  }
  TruncOperator<ComplexRational> t{Matrix<ComplexRational>::Zero(N, N), Structure::lower_triangular, 0, "R"};
  const ComplexRational minus_inv_l2 = -(ComplexRational(1) / (lambda * lambda));
  const ComplexRational one(1);
  for (Index n = 1; n <= N; ++n) {
    const ComplexRational nn(Rational(static_cast<long>(n)));
    t.entries(n - 1, n - 1) = nn / (one - nn * lambda);
    ComplexRational P = one;
    for (Index m = n; m >= 1; --m) {
      P *= one - one / (lambda * ComplexRational(Rational(static_cast<long>(m))));
      if (m < n) t.entries(n - 1, m - 1) = minus_inv_l2 / (nn * P);
    }
  }
  return t;
}

TruncOperator<LogComplex> scaled_e_matrix(Complex lambda, int k, const WeightSystem& w, Index N,
                                          double tol_sigma) {
  check_pole(lambda, tol_sigma);
  TruncOperator<LogComplex> t{Matrix<LogComplex>::Constant(N, N, LogComplex()), Structure::lower_triangular, 0,
                              "E~"};
  for (long n = 2; n <= N; ++n) {
    const auto row = e_row(lambda, n);
    const double lwn = w.log_weight(k, n);
    for (long m = 1; m < n; ++m) {
      const LogComplex& e = row[static_cast<std::size_t>(m - 1)];
      t.entries(n - 1, m - 1) = LogComplex(e.log_abs + lwn - w.log_weight(k + 1, m), e.arg);
    }
  }
  return t;
}

}  // namespace cesaro

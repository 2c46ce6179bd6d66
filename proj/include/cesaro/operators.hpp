#ifndef CESARO_OPERATORS_HPP
#define CESARO_OPERATORS_HPP

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "cesaro/log_math.hpp"
#include "cesaro/scalar.hpp"
#include "cesaro/sequences.hpp"

namespace cesaro {

using Eigen::Index;

enum class Structure { lower_triangular, diagonal, superdiagonal_shift, dense };

std::string_view to_string(Structure s);

/// Finite prefix x_1..x_N of a sequence; only the first valid_len entries are
/// trustworthy after truncated operators have been applied.
template <typename S>
struct CoordinateVector {
  Vector<S> values;
  Index valid_len = 0;

  CoordinateVector() = default;
  explicit CoordinateVector(Vector<S> v) : values(std::move(v)), valid_len(values.size()) {}
  CoordinateVector(Vector<S> v, Index valid) : values(std::move(v)), valid_len(valid) {}

  Index size() const { return values.size(); }
  auto valid() const { return values.head(valid_len); }
};

template <typename S>
CoordinateVector<S> make_coordinates(std::initializer_list<S> xs) {
  Vector<S> v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return CoordinateVector<S>(std::move(v));
}

/// p/q in the scalar type S.
template <typename S>
S ratio(long p, long q) {
  if constexpr (std::is_same_v<S, Rational>) {
    return Rational(p) / Rational(q);
  } else if constexpr (std::is_same_v<S, ComplexRational>) {
    return ComplexRational(Rational(p) / Rational(q));
  } else if constexpr (std::is_same_v<S, LogReal>) {
    return LogReal::from_double(static_cast<double>(p) / static_cast<double>(q));
  } else if constexpr (std::is_same_v<S, LogComplex>) {
    return LogComplex::from_complex(Complex(static_cast<double>(p) / static_cast<double>(q), 0.0));
  } else {
    return S(static_cast<double>(p) / static_cast<double>(q));
  }
}

/// N x N truncation of an operator on C^N.
template <typename S>
struct TruncOperator {
  Matrix<S> entries;
  Structure structure = Structure::dense;
  int prefix_shrink = 0;
  std::string name;

  Index size() const { return entries.rows(); }

  CoordinateVector<S> apply(const CoordinateVector<S>& x) const {
    if (x.size() != size()) throw std::invalid_argument("operator and vector sizes differ");
    Vector<S> y = entries * x.values;
    return {std::move(y), std::max<Index>(0, x.valid_len - prefix_shrink)};
  }
};

inline Structure compose_structure(Structure a, Structure b) {
  if (a == Structure::diagonal) return b;
  if (b == Structure::diagonal) return a;
  if (a == Structure::lower_triangular && b == Structure::lower_triangular) return a;
  return Structure::dense;
}

/// a * b: prefix shrinks add, structure tags intersect.
template <typename S>
TruncOperator<S> compose(const TruncOperator<S>& a, const TruncOperator<S>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("operator sizes differ");
  TruncOperator<S> out;
  out.entries = a.entries * b.entries;
  out.structure = compose_structure(a.structure, b.structure);
  out.prefix_shrink = a.prefix_shrink + b.prefix_shrink;
  out.name = a.name + "*" + b.name;
  return out;
}

/// Throws ConsistencyError when the tag is contradicted by the entries.
template <typename S>
void check_structure(const TruncOperator<S>& t) {
  const S zero(0);
  for (Index n = 0; n < t.size(); ++n) {
    for (Index m = 0; m < t.size(); ++m) {
      const bool nonzero = !(t.entries(n, m) == zero);
      bool allowed = true;
      switch (t.structure) {
        case Structure::lower_triangular:
          allowed = m <= n;
          break;
        case Structure::diagonal:
          allowed = m == n;
          break;
        case Structure::superdiagonal_shift:
          allowed = m == n + 1;
          break;
        case Structure::dense:
          break;
      }
      if (nonzero && !allowed)
        throw ConsistencyError(t.name + ": entry (" + std::to_string(n + 1) + "," + std::to_string(m + 1) +
                               ") violates the " + std::string(to_string(t.structure)) + " tag");
    }
  }
  if (t.structure == Structure::lower_triangular && t.prefix_shrink != 0)
    throw ConsistencyError(t.name + ": lower-triangular operator with nonzero prefix shrink");
}

template <typename S>
CoordinateVector<S> cesaro_apply(const CoordinateVector<S>& x) {
  if (x.valid_len < 1) throw std::invalid_argument("empty coordinate vector");
  Vector<S> y(x.size());
  S sum(0);
  for (Index i = 0; i < x.size(); ++i) {
    sum += x.values(i);
    y(i) = sum / ratio<S>(i + 1, 1);
  }
  return {std::move(y), x.valid_len};
}

/// y -> (n y_n - (n-1) y_{n-1})_n.
template <typename S>
CoordinateVector<S> cesaro_inverse_apply(const CoordinateVector<S>& y) {
  if (y.valid_len < 1) throw std::invalid_argument("empty coordinate vector");
  Vector<S> x(y.size());
  for (Index i = 0; i < y.size(); ++i) {
    x(i) = ratio<S>(i + 1, 1) * y.values(i);
    if (i > 0) x(i) -= ratio<S>(i, 1) * y.values(i - 1);
  }
  return {std::move(x), y.valid_len};
}

template <typename S>
TruncOperator<S> cesaro_matrix(Index N) {
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::lower_triangular, 0, "C"};
  for (Index n = 0; n < N; ++n) {
    const S v = ratio<S>(1, n + 1);
    for (Index m = 0; m <= n; ++m) t.entries(n, m) = v;
  }
  return t;
}

template <typename S>
TruncOperator<S> inverse_diagonal(Index N) {
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::diagonal, 0, "diag(1/n)"};
  for (Index n = 0; n < N; ++n) t.entries(n, n) = ratio<S>(1, n + 1);
  return t;
}

template <typename S>
TruncOperator<S> identity(Index N) {
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::diagonal, 0, "I"};
  for (Index n = 0; n < N; ++n) t.entries(n, n) = S(1);
  return t;
}

inline constexpr Index kDenseFloatDeltaLimit = 60;

/// Delta_{nm} = (-1)^(m-1) binom(n-1, m-1).
template <typename S>
TruncOperator<S> delta(Index N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::lower_triangular, 0, "Delta"};
  constexpr bool log_mode = std::is_same_v<S, LogReal> || std::is_same_v<S, LogComplex>;
  if constexpr (log_mode) {
    const LogFactorials lf(N);
    for (Index n = 0; n < N; ++n) {
      for (Index m = 0; m <= n; ++m) {
        const double lb = lf.binomial(n, m);
        const bool negative = m % 2 == 1;
        if constexpr (std::is_same_v<S, LogReal>)
          t.entries(n, m) = LogReal(negative ? -1 : 1, lb);
        else
          t.entries(n, m) = LogComplex(lb, negative ? M_PI : 0.0);
      }
    }
  } else {
    if constexpr (!ScalarTraits<S>::exact) {
      if (N > kDenseFloatDeltaLimit)
        throw RepresentationError("dense float Delta beyond N = " + std::to_string(kDenseFloatDeltaLimit) +
                                  " loses the binomials; use a log-magnitude mode");
    }
    std::vector<Integer> row{Integer(1)};
    for (Index n = 0; n < N; ++n) {
      if (n > 0) {
        std::vector<Integer> next(static_cast<std::size_t>(n) + 1, Integer(1));
        for (Index m = 1; m < n; ++m)
          next[static_cast<std::size_t>(m)] = row[static_cast<std::size_t>(m - 1)] + row[static_cast<std::size_t>(m)];
        row = std::move(next);
      }
      for (Index m = 0; m <= n; ++m) {
        const Integer& b = row[static_cast<std::size_t>(m)];
        const Integer signed_b = m % 2 == 1 ? Integer(-b) : b;
        if constexpr (std::is_same_v<S, Rational>)
          t.entries(n, m) = Rational(signed_b);
        else if constexpr (std::is_same_v<S, ComplexRational>)
          t.entries(n, m) = ComplexRational(Rational(signed_b));
        else
          t.entries(n, m) = S(signed_b.template convert_to<double>());
      }
    }
  }
  return t;
}

/// Column m of Delta: an eigenvector of C for the eigenvalue 1/m.
template <typename S>
CoordinateVector<S> delta_eigenvector(Index m, Index N) {
  if (m < 1 || m > N) throw std::invalid_argument("eigenvector index must satisfy 1 <= m <= N");
  Vector<S> x = Vector<S>::Constant(N, S(0));
  const bool negative = (m - 1) % 2 == 1;
  if constexpr (std::is_same_v<S, LogReal> || std::is_same_v<S, LogComplex>) {
    for (Index n = m; n <= N; ++n) {
      const double lb = log_binomial(n - 1, m - 1);
      if constexpr (std::is_same_v<S, LogReal>)
        x(n - 1) = LogReal(negative ? -1 : 1, lb);
      else
        x(n - 1) = LogComplex(lb, negative ? M_PI : 0.0);
    }
  } else {
    if constexpr (!ScalarTraits<S>::exact) {
      if (N > kDenseFloatDeltaLimit)
        throw RepresentationError("float eigenvector beyond N = " + std::to_string(kDenseFloatDeltaLimit) +
                                  " loses the binomials; use a log-magnitude mode");
    }
    Integer b(1);  // binom(n-1, m-1) at n = m
    for (Index n = m; n <= N; ++n) {
      if (n > m) b = b * Integer(n - 1) / Integer(n - m);
      const Integer v = negative ? Integer(-b) : b;
      if constexpr (std::is_same_v<S, Rational>)
        x(n - 1) = Rational(v);
      else if constexpr (std::is_same_v<S, ComplexRational>)
        x(n - 1) = ComplexRational(Rational(v));
      else
        x(n - 1) = S(v.template convert_to<double>());
    }
  }
  return CoordinateVector<S>(std::move(x));
}

/// (x_2, 2 x_3, 3 x_4, ...); the last coordinate is unknown after truncation.
template <typename S>
CoordinateVector<S> differentiation_apply(const CoordinateVector<S>& x) {
  if (x.valid_len < 2) throw std::invalid_argument("differentiation needs at least two valid coordinates");
  Vector<S> y = Vector<S>::Constant(x.size(), S(0));
  for (Index n = 0; n + 1 < x.size(); ++n) y(n) = ratio<S>(n + 1, 1) * x.values(n + 1);
  return {std::move(y), x.valid_len - 1};
}

template <typename S>
TruncOperator<S> differentiation_matrix(Index N) {
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::superdiagonal_shift, 1, "D"};
  for (Index n = 0; n + 1 < N; ++n) t.entries(n, n + 1) = ratio<S>(n + 1, 1);
  return t;
}

/// B with b_nn = (n+1)/n and b_nm = 1/m below the diagonal.
template <typename S>
TruncOperator<S> b_matrix(Index N) {
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::lower_triangular, 0, "B"};
  for (Index n = 1; n <= N; ++n) {
    t.entries(n - 1, n - 1) = ratio<S>(n + 1, n);
    for (Index m = 1; m < n; ++m) t.entries(n - 1, m - 1) = ratio<S>(1, m);
  }
  return t;
}

/// A = S(I - C)S^{-1}: A_nn = n/(n+1), A_nm = -1/(n+1) below the diagonal.
template <typename S>
TruncOperator<S> a_matrix(Index N) {
  TruncOperator<S> t{Matrix<S>::Zero(N, N), Structure::lower_triangular, 0, "A"};
  for (Index n = 1; n <= N; ++n) {
    t.entries(n - 1, n - 1) = ratio<S>(n, n + 1);
    for (Index m = 1; m < n; ++m) t.entries(n - 1, m - 1) = ratio<S>(-1, n + 1);
  }
  return t;
}

/// C * M in O(N^2) via column running sums.
template <typename S>
Matrix<S> cesaro_times(const Matrix<S>& M) {
  Matrix<S> out(M.rows(), M.cols());
  for (Index m = 0; m < M.cols(); ++m) {
    S sum(0);
    for (Index n = 0; n < M.rows(); ++n) {
      sum += M(n, m);
      out(n, m) = sum / ratio<S>(n + 1, 1);
    }
  }
  return out;
}

/// M * C in O(N^2) via reverse row sums.
template <typename S>
Matrix<S> times_cesaro(const Matrix<S>& M) {
  Matrix<S> out(M.rows(), M.cols());
  for (Index n = 0; n < M.rows(); ++n) {
    S sum(0);
    for (Index m = M.cols(); m-- > 0;) {
      sum += M(n, m) / ratio<S>(m + 1, 1);
      out(n, m) = sum;
    }
  }
  return out;
}

inline constexpr double kPoleTolerance = 1e-9;

/// lambda lies within the pole tolerance of {0} U {1/m}.
class PoleProximityError : public Error {
 public:
  PoleProximityError(const std::string& what, long m, double distance)
      : Error(what), nearest_m_(m), distance_(distance) {}
  /// m of the nearest pole 1/m, or 0 for the pole at zero.
  long nearest_m() const { return nearest_m_; }
  double nearest_pole() const { return nearest_m_ == 0 ? 0.0 : 1.0 / static_cast<double>(nearest_m_); }
  double distance() const { return distance_; }

 private:
  long nearest_m_;
  double distance_;
};

struct PoleDistance {
  long m;  // 0 for the pole at zero
  double distance;
};

PoleDistance nearest_pole(Complex lambda);
void check_pole(Complex lambda, double tol_sigma = kPoleTolerance);

/// e_{n,1..n-1} of E_lambda as log-magnitude and argument.
std::vector<LogComplex> e_row(Complex lambda, long n);

/// (C - lambda I)^{-1} = D_lambda - E_lambda / lambda^2 with exact complex-rational entries.
TruncOperator<ComplexRational> resolvent_exact(const ComplexRational& lambda, Index N,
                                               double tol_sigma = kPoleTolerance);

/// Float resolvent; products along each row are accumulated in log form.
template <typename S>
TruncOperator<S> resolvent(Complex lambda, Index N, double tol_sigma = kPoleTolerance) {
  static_assert(std::is_same_v<S, Complex> || std::is_same_v<S, LogComplex>);
  check_pole(lambda, tol_sigma);
  TruncOperator<S> t{Matrix<S>::Constant(N, N, S(0)), Structure::lower_triangular, 0, "R"};
  const LogComplex inv_l2 = LogComplex(-2.0 * std::log(std::abs(lambda)), M_PI - 2.0 * std::arg(lambda));
  for (long n = 1; n <= N; ++n) {
    const Complex d = 1.0 / (1.0 / static_cast<double>(n) - lambda);
    if constexpr (std::is_same_v<S, Complex>)
      t.entries(n - 1, n - 1) = d;
    else
      t.entries(n - 1, n - 1) = LogComplex::from_complex(d);
    const auto row = e_row(lambda, n);
    for (long m = 1; m < n; ++m) {
      const LogComplex v = row[static_cast<std::size_t>(m - 1)] * inv_l2;
      if constexpr (std::is_same_v<S, Complex>)
        t.entries(n - 1, m - 1) = v.to_complex();
      else
        t.entries(n - 1, m - 1) = v;
    }
  }
  return t;
}

/// E~_{lambda,k}: entries (w_k(n) / w_{k+1}(m)) e_nm in log form.
TruncOperator<LogComplex> scaled_e_matrix(Complex lambda, int k, const WeightSystem& w, Index N,
                                          double tol_sigma = kPoleTolerance);

/// Row-major CSV with a `# op=... N=... mode=... prefix_shrink=...` header.
template <typename S>
void write_csv(std::ostream& os, const TruncOperator<S>& t) {
  os << "# op=" << t.name << " N=" << t.size() << " mode=" << ScalarTraits<S>::mode
     << " prefix_shrink=" << t.prefix_shrink << '\n';
  for (Index n = 0; n < t.size(); ++n) {
    for (Index m = 0; m < t.size(); ++m) {
      if (m) os << ',';
      os << format_scalar(t.entries(n, m));
    }
    os << '\n';
  }
}

}  // namespace cesaro

#endif  // CESARO_OPERATORS_HPP

#ifndef CESARO_SCALAR_HPP
#define CESARO_SCALAR_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace cesaro {

// Exact arithmetic. Expression templates are off so that Eigen sees plain values.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Complex = std::complex<double>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value cannot be held in the requested representation (overflow, underflow
/// to a meaningless zero, or a dense float matrix too large to be trusted).
class RepresentationError : public Error {
 public:
  using Error::Error;
};

/// Two independent routes to the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// Complex number with exact rational parts.
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(int v) : re(v) {}  // NOLINT: Eigen builds literals from int
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexRational& operator*=(const ComplexRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  ComplexRational& operator/=(const ComplexRational& o) {
    Rational d = o.re * o.re + o.im * o.im;
    if (d == 0) throw std::domain_error("complex rational division by zero");
    Rational r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
  friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
  friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
  friend ComplexRational operator/(ComplexRational a, const ComplexRational& b) { return a /= b; }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }

  Complex to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }
};

/// Real number stored as sign and natural log of the magnitude. Zero has sign 0.
struct LogReal {
  int sign = 0;
  double log_abs = -std::numeric_limits<double>::infinity();

  LogReal() = default;
  LogReal(int v) : LogReal(from_double(static_cast<double>(v))) {}  // NOLINT
  LogReal(int s, double la) : sign(s), log_abs(s == 0 ? -std::numeric_limits<double>::infinity() : la) {}

  static LogReal from_double(double v) {
    if (v == 0.0) return {};
    return {v > 0 ? 1 : -1, std::log(std::abs(v))};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

  friend LogReal operator*(const LogReal& a, const LogReal& b) {
    if (a.sign == 0 || b.sign == 0) return {};
    return {a.sign * b.sign, a.log_abs + b.log_abs};
  }
  friend LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.sign == 0) throw std::domain_error("log-magnitude division by zero");
    if (a.sign == 0) return {};
    return {a.sign * b.sign, a.log_abs - b.log_abs};
  }
  friend LogReal operator-(const LogReal& a) { return {-a.sign, a.log_abs}; }
  friend LogReal operator+(const LogReal& a, const LogReal& b);
  friend LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }
  LogReal& operator+=(const LogReal& o) { return *this = *this + o; }
  LogReal& operator-=(const LogReal& o) { return *this = *this - o; }
  LogReal& operator*=(const LogReal& o) { return *this = *this * o; }
  LogReal& operator/=(const LogReal& o) { return *this = *this / o; }
  friend bool operator==(const LogReal& a, const LogReal& b) {
    return a.sign == b.sign && (a.sign == 0 || a.log_abs == b.log_abs);
  }
  friend bool operator!=(const LogReal& a, const LogReal& b) { return !(a == b); }
};

/// Complex number stored as log-magnitude and argument.
struct LogComplex {
  double log_abs = -std::numeric_limits<double>::infinity();
  double arg = 0.0;

  LogComplex() = default;
  LogComplex(int v) : LogComplex(from_complex(Complex(v, 0.0))) {}  // NOLINT
  LogComplex(double la, double a) : log_abs(la), arg(a) {}

  static LogComplex from_complex(Complex z) {
    if (z == Complex(0.0, 0.0)) return {};
    return {std::log(std::abs(z)), std::arg(z)};
  }
  bool is_zero() const { return log_abs == -std::numeric_limits<double>::infinity(); }
  Complex to_complex() const { return is_zero() ? Complex{} : std::polar(std::exp(log_abs), arg); }

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.log_abs + b.log_abs, a.arg + b.arg};
  }
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b) {
    if (b.is_zero()) throw std::domain_error("log-magnitude division by zero");
    if (a.is_zero()) return {};
    return {a.log_abs - b.log_abs, a.arg - b.arg};
  }
  friend LogComplex operator-(const LogComplex& a) {
    return a.is_zero() ? a : LogComplex{a.log_abs, a.arg + M_PI};
  }
  friend LogComplex operator+(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }
  LogComplex& operator+=(const LogComplex& o) { return *this = *this + o; }
  LogComplex& operator*=(const LogComplex& o) { return *this = *this * o; }
  friend bool operator==(const LogComplex& a, const LogComplex& b) {
    return a.log_abs == b.log_abs && (a.is_zero() || a.arg == b.arg);
  }
};

// Scalar traits used for naming, conversion and magnitudes.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr const char* mode = "rational";
  static constexpr bool exact = true;
};
template <>
struct ScalarTraits<ComplexRational> {
  static constexpr const char* mode = "complex-rational";
  static constexpr bool exact = true;
};
template <>
struct ScalarTraits<double> {
  static constexpr const char* mode = "float";
  static constexpr bool exact = false;
};
template <>
struct ScalarTraits<Complex> {
  static constexpr const char* mode = "complex";
  static constexpr bool exact = false;
};
template <>
struct ScalarTraits<LogReal> {
  static constexpr const char* mode = "log";
  static constexpr bool exact = false;
};
template <>
struct ScalarTraits<LogComplex> {
  static constexpr const char* mode = "log-complex";
  static constexpr bool exact = false;
};

/// Natural log of |x|; -inf for zero. Never overflows for huge rationals.
double log_abs(const Rational& x);
double log_abs(const ComplexRational& x);
inline double log_abs(double x) { return std::log(std::abs(x)); }
inline double log_abs(const Complex& x) { return std::log(std::abs(x)); }
inline double log_abs(const LogReal& x) { return x.log_abs; }
inline double log_abs(const LogComplex& x) { return x.log_abs; }

inline double to_double(const Rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }
inline double to_double(const LogReal& x) { return x.value(); }

inline Complex to_complex(const Rational& x) { return {x.convert_to<double>(), 0.0}; }
inline Complex to_complex(const ComplexRational& x) { return x.to_complex(); }
inline Complex to_complex(double x) { return {x, 0.0}; }
inline Complex to_complex(const Complex& x) { return x; }
inline Complex to_complex(const LogReal& x) { return {x.value(), 0.0}; }
inline Complex to_complex(const LogComplex& x) { return x.to_complex(); }

/// Textual forms used by every emitter: floats with 17 significant digits,
/// rationals as p/q (bare p when the denominator is 1), complex as a+bi.
std::string format_double(double v);
std::string format_scalar(const Rational& x);
std::string format_scalar(const ComplexRational& x);
std::string format_scalar(double x);
std::string format_scalar(const Complex& x);
std::string format_scalar(const LogReal& x);
std::string format_scalar(const LogComplex& x);

inline std::ostream& operator<<(std::ostream& os, const ComplexRational& x) { return os << format_scalar(x); }
inline std::ostream& operator<<(std::ostream& os, const LogReal& x) { return os << format_scalar(x); }
inline std::ostream& operator<<(std::ostream& os, const LogComplex& x) { return os << format_scalar(x); }

/// Parsed complex literal: always a float value; exact when every component
/// was written as a terminating decimal or p/q.
struct ComplexLiteral {
  Complex value;
  std::optional<ComplexRational> exact;
  std::string text;
};

/// Parses `a`, `bi`, `a+bi`, `a-bi`, `i`, `-i` with decimal or p/q components.
ComplexLiteral parse_complex(std::string_view text);

/// Exact decimal or p/q to Rational; nullopt when not a finite decimal.
std::optional<Rational> parse_rational(std::string_view text);

}  // namespace cesaro

namespace Eigen {

template <>
struct NumTraits<cesaro::ComplexRational> : GenericNumTraits<cesaro::ComplexRational> {
  typedef cesaro::ComplexRational Real;
  typedef cesaro::ComplexRational NonInteger;
  typedef cesaro::ComplexRational Literal;
  typedef cesaro::ComplexRational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 160
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<cesaro::LogReal> : GenericNumTraits<cesaro::LogReal> {
  typedef cesaro::LogReal Real;
  typedef cesaro::LogReal NonInteger;
  typedef cesaro::LogReal Literal;
  typedef cesaro::LogReal Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 20,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 15; }
};

template <>
struct NumTraits<cesaro::LogComplex> : GenericNumTraits<cesaro::LogComplex> {
  typedef cesaro::LogComplex Real;
  typedef cesaro::LogComplex NonInteger;
  typedef cesaro::LogComplex Literal;
  typedef cesaro::LogComplex Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 30,
    MulCost = 2
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 15; }
};

}  // namespace Eigen

#endif  // CESARO_SCALAR_HPP

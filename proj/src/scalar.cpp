#include "cesaro/scalar.hpp"

#include <cctype>
#include <cstdio>

#include <gmp.h>

namespace cesaro {

namespace {

double log_abs_mpz(const mpz_t z) {
  if (mpz_sgn(z) == 0) return -std::numeric_limits<double>::infinity();
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z);
  return std::log(std::abs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

bool is_integer_text(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::optional<double> parse_double(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::string buf(s);
  std::size_t used = 0;
  try {
    double v = std::stod(buf, &used);
    if (used != buf.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

struct Component {
  double value;
  std::optional<Rational> exact;
};

std::optional<Component> parse_component(std::string_view s) {
  if (auto q = parse_rational(s)) return Component{q->convert_to<double>(), q};
  if (auto d = parse_double(s)) return Component{*d, std::nullopt};
  return std::nullopt;
}

}  // namespace

double log_abs(const Rational& x) {
  const mpq_srcptr q = x.backend().data();
  return log_abs_mpz(mpq_numref(q)) - log_abs_mpz(mpq_denref(q));
}

double log_abs(const ComplexRational& x) {
  if (x.im == 0) return log_abs(x.re);
  if (x.re == 0) return log_abs(x.im);
  // log|z| = 0.5 log(re^2 + im^2), evaluated without overflow.
  return 0.5 * log_abs(Rational(x.re * x.re + x.im * x.im));
}

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  const LogReal& big = a.log_abs >= b.log_abs ? a : b;
  const LogReal& small = a.log_abs >= b.log_abs ? b : a;
  const double d = small.log_abs - big.log_abs;  // <= 0
  if (big.sign == small.sign) return {big.sign, big.log_abs + std::log1p(std::exp(d))};
  if (d == 0.0) return {};
  return {big.sign, big.log_abs + std::log1p(-std::exp(d))};
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const LogComplex& big = a.log_abs >= b.log_abs ? a : b;
  const LogComplex& small = a.log_abs >= b.log_abs ? b : a;
  const Complex ratio = std::polar(std::exp(small.log_abs - big.log_abs), small.arg - big.arg);
  const Complex factor = 1.0 + ratio;
  if (factor == Complex(0.0, 0.0)) return {};
  return {big.log_abs + std::log(std::abs(factor)), big.arg + std::arg(factor)};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_scalar(const Rational& x) { return x.str(); }

std::string format_scalar(const ComplexRational& x) {
  std::string out = x.re.str();
  if (x.im >= 0) out += '+';
  out += x.im.str();
  out += 'i';
  return out;
}

std::string format_scalar(double x) { return format_double(x); }

std::string format_scalar(const Complex& x) {
  std::string out = format_double(x.real());
  const std::string im = format_double(x.imag());
  if (im.front() != '-') out += '+';
  out += im;
  out += 'i';
  return out;
}

std::string format_scalar(const LogReal& x) {
  if (x.sign == 0) return "0";
  return std::string(x.sign < 0 ? "-" : "") + "exp(" + format_double(x.log_abs) + ")";
}

std::string format_scalar(const LogComplex& x) {
  if (x.is_zero()) return "0";
  return "exp(" + format_double(x.log_abs) + ")*cis(" + format_double(x.arg) + ")";
}

std::optional<Rational> parse_rational(std::string_view s) {
  if (s.empty()) return std::nullopt;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto p = s.substr(0, slash);
    auto q = s.substr(slash + 1);
    if (!is_integer_text(p) || !is_integer_text(q)) return std::nullopt;
    Integer den(std::string(q[0] == '+' ? q.substr(1) : q));
    if (den == 0) return std::nullopt;
    Integer num(std::string(p[0] == '+' ? p.substr(1) : p));
    return Rational(num, den);
  }
  // [+-]digits[.digits][(e|E)[+-]digits]
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long scale = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      --scale;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    auto rest = s.substr(i + 1);
    if (!is_integer_text(rest) || rest.size() > 6) return std::nullopt;
    scale += std::stol(std::string(rest));
    i = s.size();
  }
  if (i != s.size()) return std::nullopt;
  Integer mant(digits);
  Rational r(mant);
  if (scale > 0) r *= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(scale)));
  if (scale < 0) r /= Rational(boost::multiprecision::pow(Integer(10), static_cast<unsigned>(-scale)));
  return negative ? Rational(-r) : r;
}

ComplexLiteral parse_complex(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  const auto fail = [&]() { return std::invalid_argument("invalid complex literal '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();

  std::string_view re_text;
  std::string_view im_text;
  bool has_im = false;
  if (s.back() == 'i') {
    has_im = true;
    std::string_view body(s.data(), s.size() - 1);
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
      if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
        split = k;
        break;
      }
    }
    if (split == std::string_view::npos) {
      im_text = body;
    } else {
      re_text = body.substr(0, split);
      im_text = body.substr(split);
    }
  } else {
    re_text = s;
  }

  Component re{0.0, Rational(0)};
  Component im{0.0, Rational(0)};
  if (!re_text.empty()) {
    auto c = parse_component(re_text);
    if (!c) throw fail();
    re = *c;
  }
  if (has_im) {
    std::string imag(im_text);
    if (imag.empty() || imag == "+") imag = "1";
    if (imag == "-") imag = "-1";
    auto c = parse_component(imag);
    if (!c) throw fail();
    im = *c;
  }
  ComplexLiteral out{Complex(re.value, im.value), std::nullopt, std::string(text)};
  if (re.exact && im.exact) out.exact = ComplexRational(*re.exact, *im.exact);
  return out;
}

}  // namespace cesaro

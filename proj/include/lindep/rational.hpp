#pragma once

// Exact rational and Gaussian-rational scalars.

#include <cctype>
#include <complex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lindep {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
  if (is_integer(q)) return boost::multiprecision::numerator(q).str();
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

/// Parses an exact rational: an integer, `p/q`, or a finite decimal such as
/// `-0.125`. Anything else (exponents, function calls, irrational constants)
/// is rejected.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("non-rational input: '" + std::string(text) + "'");
  };
  auto parse_decimal = [&](std::string_view s) -> Rational {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
      negative = s.front() == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) return fail();
    Integer digits = 0;
    Integer scale = 1;
    bool seen_point = false;
    bool seen_digit = false;
    for (char c : s) {
      if (c == '.' && !seen_point) {
        seen_point = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        digits = digits * 10 + (c - '0');
        if (seen_point) scale *= 10;
        seen_digit = true;
      } else {
        return fail();
      }
    }
    if (!seen_digit) return fail();
    Rational q(digits, scale);
    return negative ? Rational(-q) : q;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + std::string(text) + "'");
  return num / den;
}

/// p + q i with p, q rational. Used for exact group-ring coefficients.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = Rational(0)) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(int r) : re(r), im(0) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    const Rational d = b.re * b.re + b.im * b.im;
    if (d == 0) throw std::domain_error("division by zero Gaussian rational");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
  GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
  GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) {
    if (z.im == 0) return os << to_string(z.re);
    if (z.re == 0) return os << "(" << to_string(z.im) << ")i";
    return os << "(" << to_string(z.re) << (z.im < 0 ? "-" : "+")
              << to_string(z.im < 0 ? Rational(-z.im) : z.im) << "i)";
  }
};

}  // namespace lindep

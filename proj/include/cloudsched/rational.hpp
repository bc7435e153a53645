#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace cloudsched {

// Exact arithmetic everywhere in the core; doubles appear only at report
// boundaries.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt pow10(int n) {
  BigInt p = 1;
  for (int i = 0; i < n; ++i) p *= 10;
  return p;
}

/// Round to at most `frac_digits` fractional decimal digits, half away
/// from zero. Exact values with short decimal expansions pass through
/// unchanged.
inline Rational round_to_decimal(const Rational& r, int frac_digits = 6) {
  const BigInt scale = pow10(frac_digits);
  BigInt num = numerator(r) * scale;
  const BigInt den = denominator(r);
  const bool neg = num < 0;
  if (neg) num = -num;
  BigInt q = num / den;
  const BigInt rem = num % den;
  if (rem * 2 >= den) ++q;
  if (neg) q = -q;
  return Rational(q, scale);
}

/// Decimal rendering with up to `frac_digits` fractional digits, exact when
/// the value is representable at that precision. Trailing zeros trimmed.
inline std::string format_decimal(const Rational& r, int frac_digits = 6) {
  const Rational rounded = round_to_decimal(r, frac_digits);
  BigInt num = numerator(rounded);
  const BigInt den = denominator(rounded);
  const bool neg = num < 0;
  if (neg) num = -num;
  const BigInt whole = num / den;
  BigInt rem = num % den;
  std::string out = neg ? "-" : "";
  out += whole.str();
  if (rem != 0) {
    std::string frac;
    for (int i = 0; i < frac_digits && rem != 0; ++i) {
      rem *= 10;
      frac += static_cast<char>('0' + static_cast<int>(rem / den));
      rem %= den;
    }
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty()) out += "." + frac;
  }
  return out;
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

}  // namespace detail

/// Parse "12", "-0.25" or "3/4" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  bool neg = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  const auto fail = [&] {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::string_view p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!detail::all_digits(p) || !detail::all_digits(q)) fail();
    const BigInt den{std::string(q)};
    if (den == 0) fail();
    value = Rational(BigInt(std::string(p)), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (!detail::all_digits(whole) || !detail::all_digits(frac)) fail();
    const BigInt scale = pow10(static_cast<int>(frac.size()));
    value = Rational(BigInt(std::string(whole)) * scale + BigInt(std::string(frac)), scale);
  } else {
    if (!detail::all_digits(s)) fail();
    value = Rational(BigInt(std::string(s)));
  }
  return neg ? -value : value;
}

}  // namespace cloudsched

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <string>
#include <string_view>

#include "so4/errors.hpp"

namespace so4 {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(const BigInt& r) { return r.sign(); }

/// Exact rational in the "[-]p/q" grammar; integers print without "/1".
inline std::string render_rational(const Rational& r) {
  BigInt den = denominator_of(r);
  if (den == 1) return numerator_of(r).str();
  return numerator_of(r).str() + "/" + den.str();
}

namespace detail {

inline BigInt parse_unsigned(std::string_view s, std::string_view whole) {
  if (s.empty()) throw ParseError("expected digits in '" + std::string(whole) + "'");
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("unexpected character '" + std::string(1, c) + "' in '" +
                       std::string(whole) + "'");
    }
  }
  return BigInt(std::string(s));
}

}  // namespace detail

/// Inverse of render_rational; also accepts an explicit "/1".
inline Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt p = detail::parse_unsigned(s.substr(0, slash), text);
    BigInt q = detail::parse_unsigned(s.substr(slash + 1), text);
    if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(p, q);
  } else {
    value = Rational(detail::parse_unsigned(s, text));
  }
  return negative ? Rational(-value) : value;
}

/// num/den for any nonzero den; the boost constructor rejects negative denominators.
template <typename Int>
inline Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("zero denominator");
  return den < 0 ? Rational(BigInt(-num), BigInt(-den)) : Rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational pow(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace so4

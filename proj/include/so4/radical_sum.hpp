#pragma once

#include <cmath>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "so4/errors.hpp"
#include "so4/pf_rational.hpp"
#include "so4/rational.hpp"

namespace so4 {

/// Finite sum of c_i * sqrt(d_i) with rational c_i and squarefree d_i > 0.
/// Canonical: no zero coefficients, so equal values have equal term maps.
class RadicalSum {
 public:
  using TermMap = std::map<BigInt, Rational>;

  RadicalSum() = default;
  RadicalSum(const Rational& r) {  // NOLINT(google-explicit-constructor)
    if (r != 0) terms_.emplace(BigInt(1), r);
  }
  RadicalSum(int v) : RadicalSum(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  /// c * sqrt(d); d must already be squarefree.
  static RadicalSum term(const Rational& c, const BigInt& squarefree_d) {
    if (squarefree_d <= 0) throw DomainError("RadicalSum: radicand must be positive");
    RadicalSum r;
    if (c != 0) r.terms_.emplace(squarefree_d, c);
    return r;
  }

  /// c * sqrt(radicand) for a nonnegative prime-factored radicand.
  static RadicalSum scaled_sqrt(const Rational& c, const PFRational& radicand) {
    if (c == 0 || radicand.is_zero()) return {};
    auto [outside, d] = sqrt_extract(radicand);
    return term(c * outside.to_rational(), d);
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1); }
  bool is_single_term() const { return terms_.size() <= 1; }

  /// Throws DomainError unless is_rational().
  Rational rational_value() const {
    if (!is_rational()) throw DomainError("RadicalSum is irrational: " + to_string());
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }

  /// Binary64 shadow value (diagnostics only).
  double to_double() const {
    double s = 0.0;
    for (const auto& [d, c] : terms_) s += so4::to_double(c) * std::sqrt(d.convert_to<double>());
    return s;
  }

  RadicalSum operator-() const {
    RadicalSum r = *this;
    for (auto& [d, c] : r.terms_) c = -c;
    return r;
  }

  RadicalSum& operator+=(const RadicalSum& o) {
    for (const auto& [d, c] : o.terms_) accumulate(d, c);
    return *this;
  }
  RadicalSum& operator-=(const RadicalSum& o) {
    for (const auto& [d, c] : o.terms_) accumulate(d, -c);
    return *this;
  }
  RadicalSum& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
    } else {
      for (auto& [d, c] : terms_) c *= s;
    }
    return *this;
  }

  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(RadicalSum a, const Rational& s) { return a *= s; }
  friend RadicalSum operator*(const Rational& s, RadicalSum a) { return a *= s; }

  friend RadicalSum operator*(const RadicalSum& a, const RadicalSum& b) {
    RadicalSum out;
    for (const auto& [d1, c1] : a.terms_) {
      for (const auto& [d2, c2] : b.terms_) {
        // Both radicands squarefree: sqrt(d1 d2) = g sqrt(d1 d2 / g^2), g = gcd.
        BigInt g = boost::multiprecision::gcd(d1, d2);
        BigInt d = (d1 / g) * (d2 / g);
        out.accumulate(d, c1 * c2 * Rational(g));
      }
    }
    return out;
  }
  RadicalSum& operator*=(const RadicalSum& o) { return *this = *this * o; }

  friend bool operator==(const RadicalSum&, const RadicalSum&) = default;

  /// Terms in increasing radicand: "[-]p/q" for rationals, "(p/q)*sqrt(d)"
  /// for radicals ("sqrt(d)" when |c| = 1), joined by " + " / " - ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [d, c] : terms_) {
      Rational mag = c < 0 ? Rational(-c) : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      if (d == 1) {
        out += render_rational(mag);
      } else if (mag == 1) {
        out += "sqrt(" + d.str() + ")";
      } else {
        out += "(" + render_rational(mag) + ")*sqrt(" + d.str() + ")";
      }
    }
    return out;
  }

  static RadicalSum parse(std::string_view text);

 private:
  void accumulate(const BigInt& d, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

inline RadicalSum radical_add(const RadicalSum& a, const RadicalSum& b) { return a + b; }
inline RadicalSum radical_mul(const RadicalSum& a, const RadicalSum& b) { return a * b; }

namespace detail {

inline bool is_squarefree_small(const BigInt& d) {
  // Parsing only: radicands in rendered output are products of small primes.
  BigInt v = d;
  for (unsigned p = 2; BigInt(p) * p <= v; ++p) {
    if (v % (p * p) == 0) return false;
    if (v % p == 0) v /= p;
    if (p > (1u << 20)) break;
  }
  return true;
}

inline RadicalSum parse_radical_term(std::string_view t, std::string_view whole) {
  auto fail = [&]() -> RadicalSum {
    throw ParseError("malformed radical term '" + std::string(t) + "' in '" + std::string(whole) + "'");
  };
  constexpr std::string_view kSqrt = "sqrt(";
  Rational coeff = 1;
  std::string_view rest = t;
  if (!rest.empty() && rest.front() == '(') {
    auto close = rest.find(')');
    if (close == std::string_view::npos) return fail();
    coeff = parse_rational(rest.substr(1, close - 1));
    rest.remove_prefix(close + 1);
    if (rest.substr(0, 1) != "*") return fail();
    rest.remove_prefix(1);
    if (rest.substr(0, kSqrt.size()) != kSqrt) return fail();
  }
  if (rest.substr(0, kSqrt.size()) == kSqrt) {
    if (rest.back() != ')') return fail();
    BigInt d = parse_unsigned(rest.substr(kSqrt.size(), rest.size() - kSqrt.size() - 1), whole);
    if (d == 0 || !is_squarefree_small(d)) return fail();
    if (coeff <= 0) return fail();
    return RadicalSum::term(coeff, d);
  }
  if (t.front() == '(') return fail();
  return RadicalSum(parse_rational(t));
}

}  // namespace detail

inline RadicalSum RadicalSum::parse(std::string_view text) {
  if (text == "0") return {};
  RadicalSum out;
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && s.front() == '-') {
    negative = true;
    s.remove_prefix(1);
  }
  while (true) {
    auto plus = s.find(" + ");
    auto minus = s.find(" - ");
    auto cut = std::min(plus, minus);
    std::string_view term = s.substr(0, cut);
    if (term.empty()) throw ParseError("empty term in '" + std::string(text) + "'");
    RadicalSum t = detail::parse_radical_term(term, text);
    out += negative ? -t : t;
    if (cut == std::string_view::npos) break;
    negative = (cut == minus);
    s.remove_prefix(cut + 3);
  }
  return out;
}

/// sign * sqrt(radicand) with a nonnegative prime-factored radicand.
class SqrtRational {
 public:
  SqrtRational() = default;

  SqrtRational(int sign, PFRational radicand) : sign_(sign), radicand_(std::move(radicand)) {
    if (radicand_.sign() < 0) throw DomainError("SqrtRational: negative radicand");
    if (radicand_.is_zero() || sign == 0) {
      sign_ = 0;
      radicand_ = PFRational{};
    } else {
      sign_ = sign > 0 ? 1 : -1;
    }
  }

  /// The value whose square is |v| and whose sign is sign(v).
  static SqrtRational from_signed_square(const PFRational& v) { return SqrtRational(v.sign(), v.abs()); }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  const PFRational& radicand() const { return radicand_; }

  /// Exact square; always a rational.
  PFRational square() const { return radicand_; }
  /// sign * square, i.e. the signed-square encoding of this value.
  PFRational signed_square() const { return sign_ < 0 ? -radicand_ : radicand_; }

  SqrtRational operator-() const { return SqrtRational(-sign_, radicand_); }
  friend SqrtRational operator*(const SqrtRational& a, const SqrtRational& b) {
    return SqrtRational(a.sign_ * b.sign_, a.radicand_ * b.radicand_);
  }
  friend SqrtRational operator/(const SqrtRational& a, const SqrtRational& b) {
    if (b.is_zero()) throw DomainError("SqrtRational: division by zero");
    return SqrtRational(a.sign_ * b.sign_, a.radicand_ / b.radicand_);
  }

  RadicalSum to_radical() const { return RadicalSum::scaled_sqrt(sign_, radicand_); }
  double to_double() const { return sign_ == 0 ? 0.0 : sign_ * std::sqrt(radicand_.to_double()); }

  /// "[-]sqrt(p/q)" or "0".
  std::string to_string() const {
    if (sign_ == 0) return "0";
    return std::string(sign_ < 0 ? "-" : "") + "sqrt(" + radicand_.to_string() + ")";
  }
  static SqrtRational parse(std::string_view text);

  friend bool operator==(const SqrtRational&, const SqrtRational&) = default;

 private:
  int sign_ = 0;
  PFRational radicand_;
};

/// Renders a single-term RadicalSum c*sqrt(d) as "[-]sqrt(c^2 d)".
inline std::string render_signed_sqrt(const RadicalSum& v) {
  if (v.is_zero()) return "0";
  if (!v.is_single_term()) throw DomainError("render_signed_sqrt: more than one term in " + v.to_string());
  const auto& [d, c] = *v.terms().begin();
  Rational sq = c * c * Rational(d);
  return std::string(c < 0 ? "-" : "") + "sqrt(" + render_rational(sq) + ")";
}

inline SqrtRational SqrtRational::parse(std::string_view text) {
  if (text == "0") return {};
  std::string_view s = text;
  int sign = 1;
  if (!s.empty() && s.front() == '-') {
    sign = -1;
    s.remove_prefix(1);
  }
  constexpr std::string_view kSqrt = "sqrt(";
  if (s.substr(0, kSqrt.size()) != kSqrt || s.empty() || s.back() != ')') {
    throw ParseError("expected [-]sqrt(p/q), got '" + std::string(text) + "'");
  }
  Rational r = parse_rational(s.substr(kSqrt.size(), s.size() - kSqrt.size() - 1));
  if (r <= 0) throw ParseError("nonpositive radicand in '" + std::string(text) + "'");
  return SqrtRational(sign, PFRational::from_rational(r));
}

/// Parses "[-]sqrt(p/q)" into a one-term RadicalSum.
inline RadicalSum parse_signed_sqrt(std::string_view text) { return SqrtRational::parse(text).to_radical(); }

}  // namespace so4

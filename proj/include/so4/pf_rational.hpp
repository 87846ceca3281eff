#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "so4/errors.hpp"
#include "so4/rational.hpp"

namespace so4 {

/// Signed rational held as a prime -> exponent map (negative exponents form
/// the denominator). Products and quotients never overflow; sums are not
/// supported in this representation.
class PFRational {
 public:
  using Factor = std::pair<std::uint32_t, int>;

  /// Zero.
  PFRational() = default;

  static PFRational one() {
    PFRational r;
    r.sign_ = 1;
    return r;
  }

  static PFRational from_int(std::int64_t value) {
    PFRational r;
    if (value == 0) return r;
    r.sign_ = value < 0 ? -1 : 1;
    std::uint64_t v = value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                                : static_cast<std::uint64_t>(value);
    for (std::uint64_t p = 2; p * p <= v; p += (p == 2 ? 1 : 2)) {
      int e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (e != 0) r.factors_.emplace_back(static_cast<std::uint32_t>(p), e);
    }
    if (v > 1) r.factors_.emplace_back(static_cast<std::uint32_t>(v), 1);
    return r;
  }

  static PFRational from_ratio(std::int64_t num, std::int64_t den) {
    if (den == 0) throw DomainError("PFRational: zero denominator");
    return from_int(num) / from_int(den);
  }

  /// Factors an arbitrary rational by trial division. Intended for parsing
  /// and for small values; throws DomainError when a cofactor cannot be
  /// resolved below the trial bound.
  static PFRational from_rational(const Rational& value,
                                  std::uint32_t trial_bound = 1u << 20) {
    PFRational r;
    if (value == 0) return r;
    r.sign_ = value.sign();
    auto split = [&](BigInt v, int direction) {
      if (v < 0) v = -v;
      std::vector<Factor> out;
      for (std::uint32_t p = 2; p <= trial_bound && v > 1; p += (p == 2 ? 1 : 2)) {
        if (BigInt(p) * p > v) break;
        int e = 0;
        while (v % p == 0) {
          v /= p;
          ++e;
        }
        if (e != 0) out.emplace_back(p, direction * e);
      }
      if (v > 1) {
        if (v > BigInt(trial_bound) * trial_bound || v > BigInt(UINT32_MAX)) {
          throw DomainError("PFRational: cannot factor cofactor " + v.str());
        }
        out.emplace_back(static_cast<std::uint32_t>(v), direction);
      }
      return out;
    };
    r.factors_ = merge(split(numerator_of(value), 1), split(denominator_of(value), -1), 1);
    return r;
  }

  /// Takes ownership of an already-canonical factor list (sorted, nonzero
  /// exponents, prime keys).
  static PFRational from_factors(int sign, std::vector<Factor> factors) {
    PFRational r;
    if (sign == 0) return r;
    r.sign_ = sign > 0 ? 1 : -1;
    r.factors_ = std::move(factors);
    return r;
  }

  int sign() const { return sign_; }
  bool is_zero() const { return sign_ == 0; }
  bool is_one() const { return sign_ == 1 && factors_.empty(); }
  const std::vector<Factor>& factors() const { return factors_; }

  /// Exponent of prime p (0 if absent).
  int exponent(std::uint32_t p) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{p, 0},
                               [](const Factor& a, const Factor& b) { return a.first < b.first; });
    return (it != factors_.end() && it->first == p) ? it->second : 0;
  }

  PFRational operator-() const {
    PFRational r = *this;
    r.sign_ = -r.sign_;
    return r;
  }
  PFRational abs() const {
    PFRational r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
  }

  friend PFRational operator*(const PFRational& a, const PFRational& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return from_factors(a.sign_ * b.sign_, merge(a.factors_, b.factors_, 1));
  }
  friend PFRational operator/(const PFRational& a, const PFRational& b) {
    if (b.is_zero()) throw DomainError("PFRational: division by zero");
    if (a.is_zero()) return {};
    return from_factors(a.sign_ * b.sign_, merge(a.factors_, b.factors_, -1));
  }
  PFRational& operator*=(const PFRational& o) { return *this = *this * o; }
  PFRational& operator/=(const PFRational& o) { return *this = *this / o; }

  PFRational pow(int e) const {
    if (e == 0) return one();
    if (is_zero()) {
      if (e < 0) throw DomainError("PFRational: zero to a negative power");
      return {};
    }
    PFRational r;
    r.sign_ = (sign_ < 0 && (e % 2 != 0)) ? -1 : 1;
    r.factors_ = factors_;
    for (auto& f : r.factors_) f.second *= e;
    return r;
  }

  BigInt numerator() const {
    BigInt out = sign_;
    for (const auto& [p, e] : factors_) {
      if (e > 0) out *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(e));
    }
    return out;
  }
  BigInt denominator() const {
    BigInt out = 1;
    for (const auto& [p, e] : factors_) {
      if (e < 0) out *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(-e));
    }
    return out;
  }
  Rational to_rational() const {
    if (is_zero()) return 0;
    return Rational(numerator(), denominator());
  }
  bool is_integer() const {
    return std::all_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.second > 0; });
  }

  /// Binary64 shadow value (diagnostics only).
  double to_double() const {
    if (is_zero()) return 0.0;
    double log_value = 0.0;
    for (const auto& [p, e] : factors_) log_value += e * std::log(static_cast<double>(p));
    return sign_ * std::exp(log_value);
  }

  std::string to_string() const { return render_rational(to_rational()); }

  friend bool operator==(const PFRational&, const PFRational&) = default;

 private:
  static std::vector<Factor> merge(const std::vector<Factor>& a, const std::vector<Factor>& b,
                                   int b_direction) {
    std::vector<Factor> out;
    out.reserve(a.size() + b.size());
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
      if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
        out.push_back(*ia++);
      } else if (ia == a.end() || ib->first < ia->first) {
        out.emplace_back(ib->first, b_direction * ib->second);
        ++ib;
      } else {
        int e = ia->second + b_direction * ib->second;
        if (e != 0) out.emplace_back(ia->first, e);
        ++ia;
        ++ib;
      }
    }
    return out;
  }

  int sign_ = 0;
  std::vector<Factor> factors_;
};

/// sqrt(r) = rational_part * sqrt(radicand), radicand squarefree and positive.
struct SqrtExtraction {
  PFRational rational_part;
  BigInt radicand = 1;
};

/// Works purely on exponents, so no large integer is ever factored.
inline SqrtExtraction sqrt_extract(const PFRational& r) {
  if (r.sign() < 0) throw DomainError("sqrt_extract: negative argument " + r.to_string());
  if (r.is_zero()) return {PFRational{}, 1};
  std::vector<PFRational::Factor> outside;
  BigInt radicand = 1;
  for (const auto& [p, e] : r.factors()) {
    // p^e = p^(2k) * p^(e - 2k) with e - 2k in {0, 1}; negative odd e
    // borrows one power from the denominator: p^-3 = p^-2 * p^-1 = p^-2 * p^-2 * p.
    int k = (e >= 0) ? e / 2 : -((-e + 1) / 2);
    int rest = e - 2 * k;
    if (k != 0) outside.emplace_back(p, k);
    if (rest != 0) radicand *= p;
  }
  return {PFRational::from_factors(1, std::move(outside)), radicand};
}

/// Immutable prime factorizations of 0! .. limit!.
class FactorialTable {
 public:
  explicit FactorialTable(int limit) : limit_(limit) {
    if (limit < 0) throw DomainError("FactorialTable: negative limit");
    std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
    for (int p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      primes_.push_back(static_cast<std::uint32_t>(p));
      for (long q = static_cast<long>(p) * p; q <= limit; q += p) composite[q] = true;
    }
    table_.reserve(static_cast<std::size_t>(limit) + 1);
    for (int k = 0; k <= limit; ++k) {
      std::vector<PFRational::Factor> f;
      for (std::uint32_t p : primes_) {
        if (p > static_cast<std::uint32_t>(k)) break;
        // Legendre: exponent of p in k! is sum floor(k / p^i).
        int e = 0;
        for (long pk = p; pk <= k; pk *= p) e += static_cast<int>(k / pk);
        f.emplace_back(p, e);
      }
      table_.push_back(PFRational::from_factors(1, std::move(f)));
    }
  }

  int limit() const { return limit_; }
  const std::vector<std::uint32_t>& primes() const { return primes_; }

  const PFRational& factorial(int k) const {
    if (k < 0) throw DomainError("factorial of negative integer " + std::to_string(k));
    if (k > limit_) throw TableCapacityError(k, limit_);
    return table_[static_cast<std::size_t>(k)];
  }

  /// Exponent of the i-th table prime in k!; callers must check k <= limit.
  int exponent(std::size_t prime_index, int k) const {
    const auto& f = table_[static_cast<std::size_t>(k)].factors();
    return prime_index < f.size() ? f[prime_index].second : 0;
  }

 private:
  int limit_;
  std::vector<std::uint32_t> primes_;
  std::vector<PFRational> table_;
};

/// Largest principal quantum number the default table is sized for.
inline constexpr int kDefaultMaxN = 200;
inline constexpr int kDefaultFactorialLimit = 4 * kDefaultMaxN + 2;
inline constexpr const char* kFactorialLimitEnv = "SO4_FACTORIAL_LIMIT";

/// Limit for the shared table: $SO4_FACTORIAL_LIMIT when set, else the default.
inline int configured_factorial_limit() {
  if (const char* env = std::getenv(kFactorialLimitEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 0 || v > 1'000'000) {
      throw DomainError(std::string(kFactorialLimitEnv) + " is not a valid limit: " + env);
    }
    return static_cast<int>(v);
  }
  return kDefaultFactorialLimit;
}

/// Process-wide table, built once on first use and then shared read-only.
inline const FactorialTable& default_factorials() {
  static const FactorialTable table(configured_factorial_limit());
  return table;
}

inline const PFRational& pf_factorial(int k) { return default_factorials().factorial(k); }

}  // namespace so4

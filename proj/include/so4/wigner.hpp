#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "so4/half_int.hpp"
#include "so4/pf_rational.hpp"
#include "so4/radical_sum.hpp"

namespace so4 {

/// (j1 j2 j3; m1 m2 m3).
struct ThreeJmArgs {
  HalfInt j1, j2, j3;
  HalfInt m1, m2, m3;

  static ThreeJmArgs from_twice(int tj1, int tj2, int tj3, int tm1, int tm2, int tm3) {
    return {HalfInt::from_twice(tj1), HalfInt::from_twice(tj2), HalfInt::from_twice(tj3),
            HalfInt::from_twice(tm1), HalfInt::from_twice(tm2), HalfInt::from_twice(tm3)};
  }

  /// j_i >= 0, |m_i| <= j_i, m_i congruent to j_i mod 1.
  bool admissible() const {
    auto ok = [](HalfInt j, HalfInt m) {
      return j.twice() >= 0 && std::abs(m.twice()) <= j.twice() && (j.twice() - m.twice()) % 2 == 0;
    };
    return ok(j1, m1) && ok(j2, m2) && ok(j3, m3);
  }

  std::array<int, 6> twice() const {
    return {j1.twice(), j2.twice(), j3.twice(), m1.twice(), m2.twice(), m3.twice()};
  }

  std::string to_string() const {
    return "(" + j1.to_string() + " " + j2.to_string() + " " + j3.to_string() + "; " + m1.to_string() + " " +
           m2.to_string() + " " + m3.to_string() + ")";
  }

  friend bool operator==(const ThreeJmArgs&, const ThreeJmArgs&) = default;
};

/// {j1 j2 j3; j4 j5 j6}.
struct SixJArgs {
  std::array<HalfInt, 6> j;

  static SixJArgs from_twice(int a, int b, int c, int d, int e, int f) {
    return {{HalfInt::from_twice(a), HalfInt::from_twice(b), HalfInt::from_twice(c), HalfInt::from_twice(d),
             HalfInt::from_twice(e), HalfInt::from_twice(f)}};
  }
};

/// |a - b| <= c <= a + b and a + b + c integral.
inline bool triangle_ok(HalfInt a, HalfInt b, HalfInt c) {
  int ta = a.twice(), tb = b.twice(), tc = c.twice();
  if (ta < 0 || tb < 0 || tc < 0) return false;
  return std::abs(ta - tb) <= tc && tc <= ta + tb && (ta + tb + tc) % 2 == 0;
}

namespace detail {

/// Dense exponent vector over the primes of a FactorialTable.
class FactorialExponents {
 public:
  explicit FactorialExponents(const FactorialTable& table) : table_(&table) {}

  void add_factorial(int k, int multiplicity = 1) {
    const auto& f = table_->factorial(k).factors();
    if (f.size() > exps_.size()) exps_.resize(f.size(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) exps_[i] += multiplicity * f[i].second;
  }
  void add(const FactorialExponents& o) {
    if (o.exps_.size() > exps_.size()) exps_.resize(o.exps_.size(), 0);
    for (std::size_t i = 0; i < o.exps_.size(); ++i) exps_[i] += o.exps_[i];
  }

  const std::vector<int>& exponents() const { return exps_; }

  PFRational to_pf() const {
    std::vector<PFRational::Factor> f;
    const auto& primes = table_->primes();
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (exps_[i] != 0) f.emplace_back(primes[i], exps_[i]);
    }
    return PFRational::from_factors(1, std::move(f));
  }

 private:
  const FactorialTable* table_;
  std::vector<int> exps_;
};

/// Exact sum of sign_k * prod p^{e_k} over factorial-ratio terms. The
/// common factor prod p^{min_k e_k} is pulled out so every remaining term
/// is an integer; one rational normalization happens at the end.
inline Rational sum_factorial_terms(const FactorialTable& table, const std::vector<int>& signs,
                                    const std::vector<FactorialExponents>& terms) {
  if (terms.empty()) return 0;
  std::size_t width = 0;
  for (const auto& t : terms) width = std::max(width, t.exponents().size());
  std::vector<int> lowest(width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    int lo = INT32_MAX;
    for (const auto& t : terms) lo = std::min(lo, i < t.exponents().size() ? t.exponents()[i] : 0);
    lowest[i] = lo;
  }
  const auto& primes = table.primes();
  BigInt total = 0;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    BigInt v = 1;
    const auto& e = terms[k].exponents();
    for (std::size_t i = 0; i < width; ++i) {
      int d = (i < e.size() ? e[i] : 0) - lowest[i];
      if (d > 0) v *= boost::multiprecision::pow(BigInt(primes[i]), static_cast<unsigned>(d));
    }
    if (signs[k] < 0) {
      total -= v;
    } else {
      total += v;
    }
  }
  BigInt num = total;
  BigInt den = 1;
  for (std::size_t i = 0; i < width; ++i) {
    if (lowest[i] > 0) num *= boost::multiprecision::pow(BigInt(primes[i]), static_cast<unsigned>(lowest[i]));
    if (lowest[i] < 0) den *= boost::multiprecision::pow(BigInt(primes[i]), static_cast<unsigned>(-lowest[i]));
  }
  return Rational(num, den);
}

}  // namespace detail

/// Exact 3jm symbol by the Racah single-sum formula; zero whenever a
/// selection rule fails. The result is a single term c*sqrt(d).
inline RadicalSum wigner_3jm(const ThreeJmArgs& args, const FactorialTable& table) {
  if (!args.admissible()) return {};
  if (args.m1.twice() + args.m2.twice() + args.m3.twice() != 0) return {};
  if (!triangle_ok(args.j1, args.j2, args.j3)) return {};

  // All combinations below are integers once the selection rules hold.
  auto half = [](int twice_sum) { return twice_sum / 2; };
  const int tj1 = args.j1.twice(), tj2 = args.j2.twice(), tj3 = args.j3.twice();
  const int tm1 = args.m1.twice(), tm2 = args.m2.twice(), tm3 = args.m3.twice();

  detail::FactorialExponents prefactor(table);
  prefactor.add_factorial(half(tj1 + tj2 - tj3));
  prefactor.add_factorial(half(tj1 - tj2 + tj3));
  prefactor.add_factorial(half(-tj1 + tj2 + tj3));
  prefactor.add_factorial(half(tj1 + tj2 + tj3) + 1, -1);
  prefactor.add_factorial(half(tj1 + tm1));
  prefactor.add_factorial(half(tj1 - tm1));
  prefactor.add_factorial(half(tj2 + tm2));
  prefactor.add_factorial(half(tj2 - tm2));
  prefactor.add_factorial(half(tj3 + tm3));
  prefactor.add_factorial(half(tj3 - tm3));

  const int a1 = half(tj3 - tj2 + tm1);  // k + a1 >= 0
  const int a2 = half(tj3 - tj1 - tm2);  // k + a2 >= 0
  const int b1 = half(tj1 + tj2 - tj3);  // b1 - k >= 0
  const int b2 = half(tj1 - tm1);
  const int b3 = half(tj2 + tm2);
  const int k_lo = std::max({0, -a1, -a2});
  const int k_hi = std::min({b1, b2, b3});

  std::vector<int> signs;
  std::vector<detail::FactorialExponents> terms;
  for (int k = k_lo; k <= k_hi; ++k) {
    detail::FactorialExponents t(table);
    t.add_factorial(k, -1);
    t.add_factorial(k + a1, -1);
    t.add_factorial(k + a2, -1);
    t.add_factorial(b1 - k, -1);
    t.add_factorial(b2 - k, -1);
    t.add_factorial(b3 - k, -1);
    signs.push_back(parity_sign(k));
    terms.push_back(std::move(t));
  }
  Rational sum = detail::sum_factorial_terms(table, signs, terms);
  if (sum == 0) return {};
  const int phase = parity_sign(half(tj1 - tj2 - tm3));
  return RadicalSum::scaled_sqrt(Rational(phase) * sum, prefactor.to_pf());
}

/// Thread-safe memo of 3jm values keyed on the representative of the
/// 12-element column-permutation / m-reversal orbit.
class ThreeJmCache {
 public:
  using Key = std::array<int, 6>;

  bool enabled() const { return enabled_.load(std::memory_order_relaxed); }
  void set_enabled(bool on) { enabled_.store(on, std::memory_order_relaxed); }
  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

  /// Orbit representative and the sign s with value(args) = s * value(rep).
  static std::pair<Key, int> canonicalize(const ThreeJmArgs& args) {
    const Key t = args.twice();
    const int jsum = (t[0] + t[1] + t[2]) / 2;
    const int odd_phase = parity_sign(jsum);
    static constexpr std::array<std::array<int, 3>, 6> kPerms{
        {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}}};
    Key best{};
    int best_sign = 1;
    bool have = false;
    for (std::size_t p = 0; p < kPerms.size(); ++p) {
      const bool odd_perm = p >= 3;
      for (int negate = 0; negate < 2; ++negate) {
        Key k{};
        for (int c = 0; c < 3; ++c) {
          k[c] = t[kPerms[p][c]];
          k[3 + c] = negate ? -t[3 + kPerms[p][c]] : t[3 + kPerms[p][c]];
        }
        const int s = (odd_perm != (negate == 1)) ? odd_phase : 1;
        if (!have || k < best) {
          best = k;
          best_sign = s;
          have = true;
        }
      }
    }
    return {best, best_sign};
  }

  template <typename Compute>
  RadicalSum get(const ThreeJmArgs& args, Compute&& compute) {
    auto [key, sign] = canonicalize(args);
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) return sign < 0 ? -it->second : it->second;
    }
    RadicalSum value =
        compute(ThreeJmArgs::from_twice(key[0], key[1], key[2], key[3], key[4], key[5]));
    {
      std::unique_lock lock(mutex_);
      map_.try_emplace(key, value);
    }
    return sign < 0 ? -value : value;
  }

 private:
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      std::size_t h = 1469598103934665603ull;
      for (int v : k) h = (h ^ static_cast<std::size_t>(v + 1024)) * 1099511628211ull;
      return h;
    }
  };

  std::atomic<bool> enabled_{true};
  mutable std::shared_mutex mutex_;
  std::unordered_map<Key, RadicalSum, KeyHash> map_;
};

inline ThreeJmCache& wigner_cache() {
  static ThreeJmCache cache;
  return cache;
}

/// 3jm with the shared factorial table, memoized when the shared cache is enabled.
inline RadicalSum wigner_3jm(const ThreeJmArgs& args) {
  const auto& table = default_factorials();
  auto& cache = wigner_cache();
  if (!cache.enabled() || !args.admissible() || !triangle_ok(args.j1, args.j2, args.j3) ||
      args.m1.twice() + args.m2.twice() + args.m3.twice() != 0) {
    return wigner_3jm(args, table);
  }
  return cache.get(args, [&](const ThreeJmArgs& a) { return wigner_3jm(a, table); });
}

/// <j1 m1 j2 m2 | j3 m3> = (-1)^{j1-j2+m3} sqrt(2 j3 + 1) (j1 j2 j3; m1 m2 -m3).
inline RadicalSum clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3, HalfInt m3) {
  RadicalSum three_j = wigner_3jm(ThreeJmArgs{j1, j2, j3, m1, m2, -m3});
  if (three_j.is_zero()) return {};
  const int phase = parity_sign((j1 - j2 + m3).to_int());
  return three_j * RadicalSum::scaled_sqrt(phase, PFRational::from_int(j3.twice() + 1));
}

/// Racah formula; zero when any of the four triads fails the triangle rule.
inline RadicalSum wigner_6j(const SixJArgs& args, const FactorialTable& table) {
  const auto& j = args.j;
  for (const auto& h : j) {
    if (h.twice() < 0) return {};
  }
  if (!triangle_ok(j[0], j[1], j[2]) || !triangle_ok(j[0], j[4], j[5]) || !triangle_ok(j[3], j[1], j[5]) ||
      !triangle_ok(j[3], j[4], j[2])) {
    return {};
  }
  // Work in twice units; every triad sum is even so the halves are exact.
  std::array<int, 6> t{};
  for (int i = 0; i < 6; ++i) t[i] = j[i].twice();
  auto half = [](int v) { return v / 2; };
  detail::FactorialExponents prefactor(table);
  auto delta = [&](int a, int b, int c) {
    prefactor.add_factorial(half(a + b - c));
    prefactor.add_factorial(half(a - b + c));
    prefactor.add_factorial(half(-a + b + c));
    prefactor.add_factorial(half(a + b + c) + 1, -1);
  };
  delta(t[0], t[1], t[2]);
  delta(t[0], t[4], t[5]);
  delta(t[3], t[1], t[5]);
  delta(t[3], t[4], t[2]);

  const int alpha[4] = {half(t[0] + t[1] + t[2]), half(t[0] + t[4] + t[5]), half(t[3] + t[1] + t[5]),
                        half(t[3] + t[4] + t[2])};
  const int beta[3] = {half(t[0] + t[1] + t[3] + t[4]), half(t[1] + t[2] + t[4] + t[5]),
                       half(t[2] + t[0] + t[5] + t[3])};
  const int lo = *std::max_element(alpha, alpha + 4);
  const int hi = *std::min_element(beta, beta + 3);

  std::vector<int> signs;
  std::vector<detail::FactorialExponents> terms;
  for (int s = lo; s <= hi; ++s) {
    detail::FactorialExponents term(table);
    term.add_factorial(s + 1);
    for (int a : alpha) term.add_factorial(s - a, -1);
    for (int b : beta) term.add_factorial(b - s, -1);
    signs.push_back(parity_sign(s));
    terms.push_back(std::move(term));
  }
  Rational sum = detail::sum_factorial_terms(table, signs, terms);
  if (sum == 0) return {};
  return RadicalSum::scaled_sqrt(sum, prefactor.to_pf());
}

inline RadicalSum wigner_6j(const SixJArgs& args) { return wigner_6j(args, default_factorials()); }

/// The Regge map (j1, (j2+j3+m1)/2, (j2+j3-m1)/2; j2-j3, (j3-j2+m1)/2+m2, (j3-j2+m1)/2+m3).
/// Leaves the 3jm value unchanged.
inline ThreeJmArgs regge_transform(const ThreeJmArgs& args) {
  if (!args.admissible()) throw InadmissibleInputError("regge_transform: inadmissible symbol " + args.to_string());
  const int tj2 = args.j2.twice(), tj3 = args.j3.twice(), tm1 = args.m1.twice();
  auto halve = [&](int twice_twice) {
    if (twice_twice % 2 != 0) {
      throw InadmissibleInputError("regge_transform: non-half-integral entry for " + args.to_string());
    }
    return HalfInt::from_twice(twice_twice / 2);
  };
  HalfInt a = halve(tj2 + tj3 + tm1);
  HalfInt b = halve(tj2 + tj3 - tm1);
  HalfInt shift = halve(tj3 - tj2 + tm1);
  ThreeJmArgs out{args.j1, a, b, args.j2 - args.j3, shift + args.m2, shift + args.m3};
  if (a.twice() < 0 || b.twice() < 0) {
    throw InadmissibleInputError("regge_transform: negative j in image of " + args.to_string());
  }
  return out;
}

}  // namespace so4

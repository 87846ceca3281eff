#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "so4/basis.hpp"
#include "so4/errors.hpp"
#include "so4/wigner.hpp"

namespace so4 {

/// C(q l m) = ((n-1)/2 (n-1)/2 l; (m-q)/2 (m+q)/2 -m); zero off the selection rules.
inline RadicalSum c_coefficient(int q, int l, int m, int n) {
  if (n < 1 || l < 0 || l > n - 1 || std::abs(m) > l) return {};
  const int big_j = n - 1;
  if (std::abs(q) > big_j - std::abs(m) || (big_j - std::abs(m) - q) % 2 != 0) return {};
  return wigner_3jm(ThreeJmArgs::from_twice(big_j, big_j, 2 * l, m - q, m + q, -2 * m));
}

/// chi = 3 n t / 2 (atomic units), the accumulated phase for a static field.
inline double chi_from_time(int n, double t) { return 1.5 * n * t; }

namespace detail {

inline void check_l_pair(int n, int l, int lp, const char* who) {
  if (n < 1 || l < 0 || lp < 0 || l > n - 1 || lp > n - 1) {
    throw DomainError(std::string(who) + ": need 0 <= l, l' <= n-1");
  }
}

}  // namespace detail

/// P(l, l'; chi) = 1/(2l+1) sum_m |sum_q B_q(l') B_q(l) e^{i chi q}|^2, with exact B
/// and only the phase evaluated in floating point.
inline double p_transition(int n, int l, int lp, double chi) {
  detail::check_l_pair(n, l, lp, "p_transition");
  const int mmax = std::min(l, lp);
  double total = 0.0;
  for (int m = -mmax; m <= mmax; ++m) {
    std::complex<double> amp = 0.0;
    for (const auto& p : parabolic_block(n, m)) {
      const double w = (b_coeff(p, lp) * b_coeff(p, l)).to_double();
      amp += w * std::polar(1.0, chi * p.q());
    }
    total += std::norm(amp);
  }
  return total / (2 * l + 1);
}

/// (2l'+1) sum_{m,q,q'} C(qlm) C(q'lm) C(ql'm) C(q'l'm) cos[chi (q - q')].
inline double p_transition_herrick(int n, int l, int lp, double chi) {
  detail::check_l_pair(n, l, lp, "p_transition_herrick");
  const int mmax = std::min(l, lp);
  double total = 0.0;
  for (int m = -mmax; m <= mmax; ++m) {
    const int width = n - 1 - std::abs(m);
    std::vector<double> prod;
    std::vector<int> qs;
    for (int q = -width; q <= width; q += 2) {
      qs.push_back(q);
      prod.push_back((c_coefficient(q, l, m, n) * c_coefficient(q, lp, m, n)).to_double());
    }
    for (std::size_t i = 0; i < qs.size(); ++i) {
      for (std::size_t j = 0; j < qs.size(); ++j) total += prod[i] * prod[j] * std::cos(chi * (qs[i] - qs[j]));
    }
  }
  return (2 * lp + 1) * total;
}

/// Time average: (2l'+1) sum_{m,q} C^2(qlm) C^2(ql'm).
inline Rational p_bar(int n, int l, int lp) {
  detail::check_l_pair(n, l, lp, "p_bar");
  const int mmax = std::min(l, lp);
  Rational total = 0;
  for (int m = -mmax; m <= mmax; ++m) {
    const int width = n - 1 - std::abs(m);
    for (int q = -width; q <= width; q += 2) {
      const RadicalSum a = c_coefficient(q, l, m, n), b = c_coefficient(q, lp, m, n);
      total += (a * a).rational_value() * (b * b).rational_value();
    }
  }
  return total * (2 * lp + 1);
}

/// (2l'+1) sum_j {l l' j; s s s}^2, s = (n-1)/2, over j in [j_min, j_max].
inline Rational p_bar_6j_range(int n, int l, int lp, int j_min, int j_max) {
  detail::check_l_pair(n, l, lp, "p_bar_6j");
  Rational total = 0;
  for (int j = std::max(0, j_min); j <= j_max; ++j) {
    RadicalSum w = wigner_6j(SixJArgs::from_twice(2 * l, 2 * lp, 2 * j, n - 1, n - 1, n - 1));
    total += (w * w).rational_value();
  }
  return total * (2 * lp + 1);
}

/// 6j form summed over every triangle-admissible j.
inline Rational p_bar_6j(int n, int l, int lp) { return p_bar_6j_range(n, l, lp, std::abs(l - lp), l + lp); }

struct PBar6jReport {
  Rational all_j;          ///< sum over every admissible j
  Rational literal_range;  ///< sum restricted to j = 0 .. l - l'
  Rational double_sum;
  bool literal_range_agrees() const { return literal_range == double_sum; }
  bool all_j_agrees() const { return all_j == double_sum; }
};

inline PBar6jReport p_bar_6j_report(int n, int l, int lp) {
  return {p_bar_6j(n, l, lp), p_bar_6j_range(n, l, lp, 0, l - lp), p_bar(n, l, lp)};
}

/// Closed forms for the initial l = 0 and l = 1 rows, compared with p_bar.
struct PBarClosedReport {
  int n = 0;
  int l_init = 0;
  int l_final = 0;
  Rational printed;
  Rational oracle;
  std::optional<Rational> candidate;  ///< corrected closed form, where one is known
  bool printed_matches() const { return printed == oracle; }
  bool candidate_matches() const { return candidate && *candidate == oracle; }
};

/// P(1, l) numerator n^2 [4 l(l+1) - 1] + tail over n (n^2 - 1)(2l-1)(2l+3).
inline Rational p_bar_1_closed(int n, int l, bool literal) {
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  const std::int64_t tail = literal ? -2 * (l + 1) + 1 : -2 * l * (l + 1) + 1;
  const std::int64_t num = n2 * (4LL * l * (l + 1) - 1) + tail;
  const std::int64_t den = static_cast<std::int64_t>(n) * (n2 - 1) * (2 * l - 1) * (2 * l + 3);
  return make_rational(num, den);
}

/// printed: P(0, l) = 1/n and the literal P(1, l) expression.
inline Rational p_bar_closed(int n, int l_final, int l_init) {
  if (l_init == 0) {
    if (n < 1) throw DomainError("p_bar_closed: n must be positive");
    return Rational(1, n);
  }
  if (l_init == 1) {
    if (n < 2) throw DomainError("p_bar_closed: l = 1 needs n >= 2");
    return p_bar_1_closed(n, l_final, true);
  }
  throw DomainError("p_bar_closed: closed forms exist for initial l = 0 and 1 only");
}

inline PBarClosedReport p_bar_closed_report(int n, int l_final, int l_init) {
  PBarClosedReport r;
  r.n = n;
  r.l_init = l_init;
  r.l_final = l_final;
  r.printed = p_bar_closed(n, l_final, l_init);
  r.oracle = p_bar(n, l_init, l_final);
  if (l_init == 1) r.candidate = p_bar_1_closed(n, l_final, false);
  return r;
}

/// Entries indexed [l][l'].
template <class T>
struct TransitionTable {
  int n = 0;
  std::optional<double> chi;  ///< set for P, empty for the time average
  std::vector<std::vector<T>> entries;
};

using PBarTable = TransitionTable<Rational>;
using PTable = TransitionTable<double>;

inline PBarTable p_bar_table(int n) {
  PBarTable t;
  t.n = n;
  t.entries.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int l = 0; l < n; ++l) {
    for (int lp = 0; lp < n; ++lp) t.entries[l][lp] = p_bar(n, l, lp);
  }
  return t;
}

inline PTable p_table(int n, double chi) {
  PTable t;
  t.n = n;
  t.chi = chi;
  t.entries.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n)));
  for (int l = 0; l < n; ++l) {
    for (int lp = 0; lp < n; ++lp) t.entries[l][lp] = p_transition(n, l, lp, chi);
  }
  return t;
}

}  // namespace so4

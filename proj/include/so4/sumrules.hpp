#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "so4/basis.hpp"
#include "so4/operators.hpp"
#include "so4/radical_sum.hpp"
#include "so4/wigner.hpp"

namespace so4 {

enum class Verdict { ExactMatch, Mismatch, IllDefined };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ExactMatch: return "exact-match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::IllDefined: return "ill-defined";
  }
  return "?";
}

/// The same sum evaluated as it appears in the literature (3jm symbols and
/// explicit ratios), next to the canonical evaluation.
struct PrintedFormReport {
  std::optional<RadicalSum> lhs;  ///< empty when a square root of a negative number appears
  Rational rhs;                   ///< right-hand side as printed
  Verdict verdict = Verdict::IllDefined;
  std::optional<RadicalSum> minus_canonical;  ///< printed lhs - canonical lhs
  std::string note;
};

struct SumRuleReport {
  std::string rule;
  ParabolicLabel label;
  int power = 0;
  RadicalSum lhs;
  Rational rhs;
  Verdict verdict = Verdict::Mismatch;
  std::optional<PrintedFormReport> printed;

  bool exact_match() const { return verdict == Verdict::ExactMatch; }
  RadicalSum difference() const { return lhs - RadicalSum(rhs); }
};

namespace detail {

inline Verdict compare(const RadicalSum& lhs, const Rational& rhs) {
  return lhs.is_rational() && lhs.rational_value() == rhs ? Verdict::ExactMatch : Verdict::Mismatch;
}

inline SumRuleReport make_report(std::string rule, const ParabolicLabel& p, int power, RadicalSum lhs, Rational rhs) {
  SumRuleReport r;
  r.rule = std::move(rule);
  r.label = p;
  r.power = power;
  r.verdict = compare(lhs, rhs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  return r;
}

inline void attach_printed(SumRuleReport& r, std::optional<RadicalSum> lhs, Rational rhs, std::string note = {}) {
  PrintedFormReport pr;
  pr.rhs = std::move(rhs);
  pr.note = std::move(note);
  if (lhs) {
    pr.verdict = compare(*lhs, pr.rhs);
    pr.minus_canonical = *lhs - r.lhs;
  }
  pr.lhs = std::move(lhs);
  r.printed = std::move(pr);
}

/// B(l) for l in [|m|, n-1]; zero outside (the convention for B(l +- k) factors).
class BLookup {
 public:
  explicit BLookup(const ParabolicLabel& p) : lo_(std::abs(p.m)), hi_(p.n() - 1), values_(b_vector(p)) {}
  RadicalSum operator()(int l) const {
    if (l < lo_ || l > hi_) return {};
    return values_[static_cast<std::size_t>(l - lo_)];
  }
  int lo() const { return lo_; }
  int hi() const { return hi_; }

 private:
  int lo_, hi_;
  std::vector<RadicalSum> values_;
};

/// C(l) = ((n-1)/2 (n-1)/2 l; (m-q)/2 (m+q)/2 -m), zero outside the manifold.
inline RadicalSum c_symbol(const ParabolicLabel& p, int l) {
  if (l < std::abs(p.m) || l > p.n() - 1) return {};
  const int big_j = p.n() - 1, q = p.q();
  return wigner_3jm(ThreeJmArgs::from_twice(big_j, big_j, 2 * l, p.m - q, p.m + q, -2 * p.m));
}

inline Rational int_pow(const Rational& base, int e) { return pow(base, static_cast<unsigned>(e)); }

}  // namespace detail

/// Sum over l of B(l) B(l+d) times the A_z^k expansion coefficient, grouped by
/// (l+d, l): the literal closed-form sum for k = 1..4.
inline std::map<std::pair<int, int>, RadicalSum> beta_form_terms(const ParabolicLabel& p, int k) {
  p.validate();
  detail::BLookup b(p);
  std::map<std::pair<int, int>, RadicalSum> out;
  for (int l = b.lo(); l <= b.hi(); ++l) {
    for (const auto& [d, coeff] : az_power_expansion(p.n(), l, p.m, k)) {
      RadicalSum t = b(l) * b(l + d) * coeff;
      if (!t.is_zero()) out[{l + d, l}] += t;
    }
  }
  return out;
}

/// v_{l'} M_{l' l} v_l with M = A_z^k over the spherical block, grouped by (l', l).
inline std::map<std::pair<int, int>, RadicalSum> az_moment_terms(const ParabolicLabel& p, int k) {
  p.validate();
  const ExactMatrix mat = az_power_matrix(p.n(), p.m, k);
  const auto v = b_vector(p);
  const int lo = std::abs(p.m);
  std::map<std::pair<int, int>, RadicalSum> out;
  for (int r = 0; r < mat.rows(); ++r) {
    for (int c = 0; c < mat.cols(); ++c) {
      if (mat(r, c).is_zero()) continue;
      RadicalSum t = v[static_cast<std::size_t>(r)] * mat(r, c) * v[static_cast<std::size_t>(c)];
      if (!t.is_zero()) out[{lo + r, lo + c}] += t;
    }
  }
  return out;
}

inline RadicalSum sum_terms(const std::map<std::pair<int, int>, RadicalSum>& terms) {
  RadicalSum s;
  for (const auto& [key, t] : terms) s += t;
  return s;
}

/// sum_l B^2(l) l(l+1) = [n^2 - 1 + m^2 - (n1-n2)^2] / 2.
inline SumRuleReport sum_rule_l2(const ParabolicLabel& p) {
  p.validate();
  const int n = p.n(), m = p.m, q = p.q();
  detail::BLookup b(p);
  RadicalSum lhs;
  for (int l = b.lo(); l <= b.hi(); ++l) lhs += b(l) * b(l) * Rational(l * (l + 1));
  SumRuleReport r = detail::make_report("sr1", p, 1, std::move(lhs), Rational(n * n - 1 + m * m - q * q, 2));

  // As tabulated: (2l+1) ((n-1+m)/2 (n-1-m)/2 l; -q/2 q/2 0)^2 l(l+1).
  RadicalSum printed;
  for (int l = b.lo(); l <= b.hi(); ++l) {
    RadicalSum c = wigner_3jm(ThreeJmArgs::from_twice(n - 1 + m, n - 1 - m, 2 * l, -q, q, 0));
    printed += c * c * Rational((2 * l + 1) * l * (l + 1));
  }
  detail::attach_printed(r, std::move(printed), r.rhs);
  return r;
}

namespace detail {

/// sqrt(x) * y, or nullopt when x < 0 and y != 0.
inline std::optional<RadicalSum> sqrt_times(const Rational& x, const RadicalSum& y) {
  if (y.is_zero()) return RadicalSum{};
  if (x < 0) return std::nullopt;
  return RadicalSum::scaled_sqrt(1, PFRational::from_rational(x)) * y;
}

/// [(l^2 - m^2)(n^2 - l^2)] / (4 l^2 - 1) with the literal denominator.
inline Rational ratio_term(int n, int l, int m) {
  return make_rational<std::int64_t>((static_cast<std::int64_t>(l) * l - m * m) * (static_cast<std::int64_t>(n) * n - l * l),
                                     4LL * l * l - 1);
}

inline Rational ratio_num(int n, int l, int m) {
  return Rational((static_cast<std::int64_t>(l) * l - m * m) * (static_cast<std::int64_t>(n) * n - l * l));
}

/// The sr2 left-hand side in its explicit-ratio, 3jm form.
inline std::optional<RadicalSum> sr2_printed(const ParabolicLabel& p, std::string& note) {
  const int n = p.n(), m = p.m, lo = std::abs(m);
  std::optional<RadicalSum> total = RadicalSum{};
  for (int l = lo; l <= n - 1; ++l) {
    const RadicalSum c = c_symbol(p, l);
    const RadicalSum diag = c * c * Rational(2 * l + 1) * (ratio_term(n, l, m) + ratio_term(n, l + 1, m));
    *total += diag;

    if (l - 2 >= lo) {
      const Rational x = ratio_num(n, l, m) * ratio_num(n, l - 1, m) /
                         (Rational(4LL * l * l - 1) * Rational(4LL * (l - 1) * (l - 1) - 1));
      auto t = sqrt_times(Rational((2 * l + 1) * (2 * l - 3)) * x, c * c_symbol(p, l - 2));
      if (!t) {
        note = "negative radicand in the l-2 term at l=" + std::to_string(l);
        return std::nullopt;
      }
      *total += *t;
    }
    if (l + 2 <= n - 1) {
      // Denominator exactly as printed: (4l^2 - 1)[4(l+1)^2 - 1].
      const Rational x = ratio_num(n, l + 2, m) * ratio_num(n, l + 1, m) /
                         (Rational(4LL * l * l - 1) * Rational(4LL * (l + 1) * (l + 1) - 1));
      auto t = sqrt_times(Rational((2 * l + 1) * (2 * l + 5)) * x, c * c_symbol(p, l + 2));
      if (!t) {
        note = "negative radicand in the l+2 term at l=" + std::to_string(l) +
               " (denominator (4l^2-1)[4(l+1)^2-1] is negative)";
        return std::nullopt;
      }
      *total += *t;
    }
  }
  return total;
}

/// sr3 / sr4 in 3jm form: the B(l) B(l+d) products become
/// sqrt((2l+1)(2(l+d)+1)) C(l) C(l+d), all other factors unchanged.
inline std::optional<RadicalSum> srk_printed_3jm(const ParabolicLabel& p, int k, std::string& note) {
  const int n = p.n(), m = p.m, lo = std::abs(m);
  RadicalSum total;
  for (int l = lo; l <= n - 1; ++l) {
    const RadicalSum c = c_symbol(p, l);
    for (const auto& [d, coeff] : az_power_expansion(n, l, m, k)) {
      if (l + d < lo || l + d > n - 1) continue;
      auto t = sqrt_times(Rational((2 * l + 1) * (2 * (l + d) + 1)), c * c_symbol(p, l + d) * coeff);
      if (!t) {
        note = "negative radicand at l=" + std::to_string(l) + ", offset " + std::to_string(d);
        return std::nullopt;
      }
      total += *t;
    }
  }
  return total;
}

}  // namespace detail

/// <n1 n2 m| A_z^k |n1 n2 m> = (n1 - n2)^k for k = 2, 3, 4 from the closed-form
/// beta expansions (canonical), with the 3jm/explicit-ratio form attached.
inline SumRuleReport sum_rule_az(const ParabolicLabel& p, int power) {
  if (power < 2 || power > 4) throw DomainError("sum_rule_az: power must be 2, 3 or 4");
  p.validate();
  const Rational q = p.q();
  SumRuleReport r = detail::make_report("sr" + std::to_string(power), p, power, sum_terms(beta_form_terms(p, power)),
                                        detail::int_pow(q, power));
  std::string note;
  std::optional<RadicalSum> printed;
  Rational printed_rhs;
  if (power == 2) {
    printed = detail::sr2_printed(p, note);
    printed_rhs = detail::int_pow(q, 2);
  } else {
    printed = detail::srk_printed_3jm(p, power, note);
    printed_rhs = detail::int_pow(-q, power);  // written as (n2 - n1)^k
  }
  detail::attach_printed(r, std::move(printed), std::move(printed_rhs), std::move(note));
  return r;
}

inline constexpr int kDefaultMomentBound = 8;
inline constexpr int kDefaultL2PowerBound = 4;

/// v.M.v with v = B(.) and M = A_z^k in the spherical block; equals (n1 - n2)^k.
inline SumRuleReport az_moment_generic(const ParabolicLabel& p, int power, int bound = kDefaultMomentBound) {
  if (power < 0 || power > bound) {
    throw DomainError("az_moment_generic: power " + std::to_string(power) + " outside [0, " + std::to_string(bound) + "]");
  }
  p.validate();
  return detail::make_report("az-moment", p, power, sum_terms(az_moment_terms(p, power)),
                             detail::int_pow(Rational(p.q()), power));
}

/// sum_l B^2(l) [l(l+1)]^k evaluated by applying L^2 k times in the generator
/// engine (lhs) and by direct spherical summation (rhs).
inline SumRuleReport l2_power_moment(const ParabolicLabel& p, int power, int bound = kDefaultL2PowerBound) {
  if (power < 1 || power > bound) {
    throw DomainError("l2_power_moment: power " + std::to_string(power) + " outside [1, " + std::to_string(bound) + "]");
  }
  p.validate();
  const OperatorExpression l2 = ops::l_squared();
  ParabolicVector v = ParabolicVector::basis(p);
  for (int i = 0; i < power; ++i) v = expression_apply(l2, v);
  RadicalSum engine = v.component(p);

  detail::BLookup b(p);
  RadicalSum direct;
  for (int l = b.lo(); l <= b.hi(); ++l) direct += b(l) * b(l) * detail::int_pow(Rational(l * (l + 1)), power);
  return detail::make_report("l2-power", p, power, std::move(engine), direct.rational_value());
}

/// Every (n, m, n1, n2) with 1 <= n <= max_n, in increasing n, then m, then n1.
inline std::vector<ParabolicLabel> all_labels(int max_n, int min_n = 1) {
  std::vector<ParabolicLabel> out;
  for (int n = std::max(1, min_n); n <= max_n; ++n) {
    for (int m = -(n - 1); m <= n - 1; ++m) {
      for (const auto& p : parabolic_block(n, m)) out.push_back(p);
    }
  }
  return out;
}

/// Canonical report for "power" p as used by sweeps: p = 1 is the l(l+1) rule,
/// p = 2..4 the A_z^p rules.
inline SumRuleReport sum_rule(const ParabolicLabel& p, int power) {
  return power == 1 ? sum_rule_l2(p) : sum_rule_az(p, power);
}

}  // namespace so4

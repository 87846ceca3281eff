#pragma once

#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "so4/basis.hpp"
#include "so4/errors.hpp"
#include "so4/matrix.hpp"
#include "so4/radical_sum.hpp"

namespace so4 {

// ---------------------------------------------------------------------------
// Spherical basis: A_z and its powers.

/// beta_{n l} = sqrt((n^2 - l^2)(l^2 - m^2) / (4 l^2 - 1)): the <n (l-1) m| A_z |n l m>
/// element. Zero unless |m| < l < n, i.e. whenever either neighbouring state
/// leaves the manifold.
inline SqrtRational beta(int n, int l, int m) {
  if (l < 0) throw DomainError("beta: negative l");
  if (l <= std::abs(m) || l >= n) return {};
  const std::int64_t num = (static_cast<std::int64_t>(n) * n - static_cast<std::int64_t>(l) * l) *
                           (static_cast<std::int64_t>(l) * l - static_cast<std::int64_t>(m) * m);
  return SqrtRational(1, PFRational::from_ratio(num, 4LL * l * l - 1));
}

namespace detail {

inline RadicalSum beta_r(int n, int l, int m) { return l < 0 ? RadicalSum{} : beta(n, l, m).to_radical(); }
inline Rational beta_sq(int n, int l, int m) { return l < 0 ? Rational(0) : beta(n, l, m).square().to_rational(); }

}  // namespace detail

/// A_z |n l m> = beta_{n(l+1)} |n (l+1) m> + beta_{n l} |n (l-1) m>.
inline ManifoldState az_apply_spherical(const ManifoldState& st) {
  if (st.basis() != Basis::Spherical) throw DomainError("az_apply_spherical: input must be spherical");
  const int n = st.n(), m = st.m(), lo = std::abs(m);
  ManifoldState out(Basis::Spherical, n, m);
  for (int l = lo; l <= n - 1; ++l) {
    const RadicalSum& c = st.at_l(l);
    if (c.is_zero()) continue;
    if (l + 1 <= n - 1) out.at_l(l + 1) += c * detail::beta_r(n, l + 1, m);
    if (l - 1 >= lo) out.at_l(l - 1) += c * detail::beta_r(n, l, m);
  }
  return out;
}

/// <n l' m| A_z^k |n l m>, rows l', columns l (both from |m|).
inline ExactMatrix az_power_matrix(int n, int m, int k) {
  if (k < 0) throw DomainError("az_power_matrix: negative power");
  if (n < 1 || std::abs(m) > n - 1) throw DomainError("az_power_matrix: no block (n, m)");
  const int lo = std::abs(m), dim = n - lo;
  ExactMatrix a(dim, dim);
  for (int i = 0; i + 1 < dim; ++i) {
    RadicalSum b = detail::beta_r(n, lo + i + 1, m);
    a(i + 1, i) = b;
    a(i, i + 1) = b;
  }
  ExactMatrix out = ExactMatrix::identity(dim);
  for (int i = 0; i < k; ++i) out = a * out;
  return out;
}

/// det(A_z - x I) over the (n, m) spherical block. The matrix is tridiagonal with
/// zero diagonal, so D_k = -x D_{k-1} - beta_k^2 D_{k-2} stays rational.
inline Rational az_characteristic(int n, int m, const Rational& x) {
  if (n < 1 || std::abs(m) > n - 1) throw DomainError("az_characteristic: no block (n, m)");
  const int lo = std::abs(m);
  Rational prev = 1, cur = -x;
  for (int l = lo + 1; l <= n - 1; ++l) {
    Rational next = -x * cur - detail::beta_sq(n, l, m) * prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

/// Closed-form expansion A_z^k |n l m> = sum_d c_d |n (l+d) m> for k = 1..4, term by
/// term as in the literature (out-of-manifold beta factors are zero). Keys are the
/// offsets d; entries that land outside [|m|, n-1] carry a zero coefficient.
inline std::map<int, RadicalSum> az_power_expansion(int n, int l, int m, int k) {
  auto b = [&](int ll) { return detail::beta_r(n, ll, m); };
  auto b2 = [&](int ll) { return RadicalSum(detail::beta_sq(n, ll, m)); };
  std::map<int, RadicalSum> out;
  switch (k) {
    case 1:
      out[-1] = b(l);
      out[1] = b(l + 1);
      break;
    case 2:
      out[-2] = b(l) * b(l - 1);
      out[0] = b2(l) + b2(l + 1);
      out[2] = b(l + 1) * b(l + 2);
      break;
    case 3:
      out[-3] = b(l - 2) * b(l - 1) * b(l);
      out[-1] = b(l) * (b2(l - 1) + b2(l) + b2(l + 1));
      out[1] = b(l + 1) * (b2(l) + b2(l + 1) + b2(l + 2));
      out[3] = b(l + 1) * b(l + 2) * b(l + 3);
      break;
    case 4:
      out[-4] = b(l - 3) * b(l - 2) * b(l - 1) * b(l);
      out[-2] = b(l - 1) * b(l) * (b2(l - 2) + b2(l - 1) + b2(l) + b2(l + 1));
      out[0] = b2(l + 1) * (b2(l) + b2(l + 1) + b2(l + 2)) + b2(l) * (b2(l - 1) + b2(l) + b2(l + 1));
      out[2] = b(l + 1) * b(l + 2) * (b2(l) + b2(l + 1) + b2(l + 2) + b2(l + 3));
      out[4] = b(l + 1) * b(l + 2) * b(l + 3) * b(l + 4);
      break;
    default:
      throw DomainError("az_power_expansion: closed forms exist for k = 1..4 only");
  }
  return out;
}

/// <n l m| A^2 |n l m> = n^2 - 1 - l(l+1).
inline Rational a_squared_expectation(const SphericalLabel& s) {
  s.validate();
  return Rational(s.n * s.n - 1 - s.l * (s.l + 1));
}

// ---------------------------------------------------------------------------
// Parabolic basis: the j1, j2 generators on the full n^2 manifold.

enum class Generator { Identity, J1z, J2z, J1Plus, J1Minus, J2Plus, J2Minus };

inline std::string generator_name(Generator g) {
  switch (g) {
    case Generator::Identity: return "1";
    case Generator::J1z: return "j1z";
    case Generator::J2z: return "j2z";
    case Generator::J1Plus: return "j1+";
    case Generator::J1Minus: return "j1-";
    case Generator::J2Plus: return "j2+";
    case Generator::J2Minus: return "j2-";
  }
  return "?";
}

/// Twice the (j1z, j2z) eigenvalues: a = m + q, b = m - q, each in {-(n-1), ..., n-1}.
struct ZeemanIndex {
  int a = 0;
  int b = 0;

  int m() const { return (a + b) / 2; }
  int q() const { return (a - b) / 2; }
  static ZeemanIndex of(const ParabolicLabel& p) { return {p.m + p.q(), p.m - p.q()}; }
  friend bool operator==(const ZeemanIndex&, const ZeemanIndex&) = default;
  friend auto operator<=>(const ZeemanIndex&, const ZeemanIndex&) = default;
};

/// One generator step on a basis state of the n-manifold. Returns nullopt for a
/// zero result; the coefficient is returned as sign * sqrt(square).
struct GeneratorStep {
  ZeemanIndex target;
  SqrtRational coeff;
};

namespace detail {

/// (1/2) sqrt((J - t)(J + t + 2)) for the raising step t -> t + 2, J = n - 1.
inline std::optional<SqrtRational> ladder_coeff(int big_j, int t, int dir, const char* name) {
  const std::int64_t radicand = dir > 0 ? static_cast<std::int64_t>(big_j - t) * (big_j + t + 2)
                                        : static_cast<std::int64_t>(big_j + t) * (big_j - t + 2);
  const int target = t + 2 * dir;
  const bool inside = std::abs(target) <= big_j;
  if (radicand < 0 || (!inside && radicand != 0)) {
    throw InternalConsistencyError(std::string(name) + ": radicand " + std::to_string(radicand) +
                                   " at twice-m=" + std::to_string(t) + " in manifold n=" +
                                   std::to_string(big_j + 1));
  }
  if (radicand == 0) return std::nullopt;
  return SqrtRational(1, PFRational::from_ratio(radicand, 4));
}

inline SqrtRational half_value(int twice) {
  return SqrtRational(twice > 0 ? 1 : -1, PFRational::from_ratio(static_cast<std::int64_t>(twice) * twice, 4));
}

}  // namespace detail

inline std::optional<GeneratorStep> generator_step(Generator g, int n, ZeemanIndex s) {
  const int big_j = n - 1;
  switch (g) {
    case Generator::Identity:
      return GeneratorStep{s, SqrtRational(1, PFRational::one())};
    case Generator::J1z:
      if (s.a == 0) return std::nullopt;
      return GeneratorStep{s, detail::half_value(s.a)};
    case Generator::J2z:
      if (s.b == 0) return std::nullopt;
      return GeneratorStep{s, detail::half_value(s.b)};
    case Generator::J1Plus:
    case Generator::J1Minus: {
      const int dir = g == Generator::J1Plus ? 1 : -1;
      auto c = detail::ladder_coeff(big_j, s.a, dir, generator_name(g).c_str());
      if (!c) return std::nullopt;
      return GeneratorStep{{s.a + 2 * dir, s.b}, *c};
    }
    case Generator::J2Plus:
    case Generator::J2Minus: {
      const int dir = g == Generator::J2Plus ? 1 : -1;
      auto c = detail::ladder_coeff(big_j, s.b, dir, generator_name(g).c_str());
      if (!c) return std::nullopt;
      return GeneratorStep{{s.a, s.b + 2 * dir}, *c};
    }
  }
  throw DomainError("generator_step: unknown generator");
}

/// Phase of |n1 n2 m> relative to the product state |j1 a/2>|j2 b/2>: (-1)^n2.
/// The ladder coefficients above act on product states with positive phases;
/// this factor makes the labelled states exactly the ones b_coeff expands, so
/// L^2 comes out diagonal after the B transform.
inline int parabolic_phase(int n, ZeemanIndex s) {
  const int n2 = (n - std::abs(s.m()) - 1 - s.q()) / 2;
  return n2 % 2 == 0 ? 1 : -1;
}

/// Sparse vector over the n^2 product states |j1 a/2>|j2 b/2> of one manifold.
class ParabolicVector {
 public:
  explicit ParabolicVector(int n) : n_(n) {
    if (n < 1) throw DomainError("ParabolicVector: n must be positive");
  }

  static ParabolicVector basis(const ParabolicLabel& p) {
    p.validate();
    ParabolicVector v(p.n());
    const ZeemanIndex s = ZeemanIndex::of(p);
    v.add(s, RadicalSum(parabolic_phase(p.n(), s)));
    return v;
  }

  /// <p|v> with the labelled-state phase applied.
  RadicalSum component(const ParabolicLabel& p) const {
    const ZeemanIndex s = ZeemanIndex::of(p);
    return coefficient(s) * RadicalSum(parabolic_phase(n_, s));
  }

  int n() const { return n_; }
  const std::map<ZeemanIndex, RadicalSum>& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  RadicalSum coefficient(ZeemanIndex s) const {
    auto it = entries_.find(s);
    return it == entries_.end() ? RadicalSum{} : it->second;
  }

  void add(ZeemanIndex s, const RadicalSum& c) {
    if (std::abs(s.a) > n_ - 1 || std::abs(s.b) > n_ - 1 || (s.a + n_ - 1) % 2 != 0 || (s.b + n_ - 1) % 2 != 0) {
      throw DomainError("ParabolicVector: index outside the manifold");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = entries_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) entries_.erase(it);
    }
  }

  ParabolicVector& operator+=(const ParabolicVector& o) {
    if (o.n_ != n_) throw DomainError("ParabolicVector: manifold mismatch");
    for (const auto& [s, c] : o.entries_) add(s, c);
    return *this;
  }

  friend bool operator==(const ParabolicVector&, const ParabolicVector&) = default;

 private:
  int n_;
  std::map<ZeemanIndex, RadicalSum> entries_;
};

inline ParabolicVector generator_apply(Generator g, const ParabolicVector& v) {
  ParabolicVector out(v.n());
  for (const auto& [s, c] : v.entries()) {
    if (auto step = generator_step(g, v.n(), s)) out.add(step->target, c * step->coeff.to_radical());
  }
  return out;
}

namespace detail {

inline ParabolicVector embed(const ManifoldState& st) {
  if (st.basis() != Basis::Parabolic) throw DomainError("parabolic operator applied to a spherical state");
  ParabolicVector v(st.n());
  for (int i = 0; i < st.size(); ++i) {
    const int q = st.label_at(i);
    const ZeemanIndex s{st.m() + q, st.m() - q};
    v.add(s, st.coeffs()[static_cast<std::size_t>(i)] * RadicalSum(parabolic_phase(st.n(), s)));
  }
  return v;
}

inline ManifoldState extract(const ParabolicVector& v, int m, const char* who) {
  ManifoldState out(Basis::Parabolic, v.n(), m);
  for (const auto& [s, c] : v.entries()) {
    if (s.m() != m) throw DomainError(std::string(who) + ": result leaves the m=" + std::to_string(m) + " block");
    out.at_q(s.q()) = c * RadicalSum(parabolic_phase(v.n(), s));
  }
  return out;
}

}  // namespace detail

inline ManifoldState generator_apply(Generator g, const ManifoldState& st) {
  return detail::extract(generator_apply(g, detail::embed(st)), st.m(), "generator_apply");
}

/// scalar * g_1 g_2 ... g_k; the rightmost generator acts first.
struct GeneratorWord {
  std::vector<Generator> letters;
  Rational scalar = 1;

  GeneratorWord() = default;
  GeneratorWord(std::initializer_list<Generator> gs, Rational s = 1) : letters(gs), scalar(std::move(s)) {}

  std::string to_string() const {
    std::string out = render_rational(scalar);
    for (Generator g : letters) out += " " + generator_name(g);
    return out;
  }
  friend bool operator==(const GeneratorWord&, const GeneratorWord&) = default;
};

/// Result of a word acting on a single basis state: a basis state or zero.
inline std::optional<GeneratorStep> word_step(const GeneratorWord& w, int n, ZeemanIndex s) {
  if (w.scalar == 0) return std::nullopt;
  SqrtRational coeff(1, PFRational::one());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    auto step = generator_step(*it, n, s);
    if (!step) return std::nullopt;
    s = step->target;
    coeff = coeff * step->coeff;
  }
  return GeneratorStep{s, coeff};
}

/// Linear combination of generator words.
class OperatorExpression {
 public:
  using Term = std::pair<Rational, GeneratorWord>;

  OperatorExpression() = default;
  OperatorExpression(const Rational& c) {  // NOLINT(google-explicit-constructor)
    if (c != 0) terms_.push_back({c, GeneratorWord{{Generator::Identity}}});
  }
  OperatorExpression(Generator g) { terms_.push_back({1, GeneratorWord{{g}}}); }  // NOLINT(google-explicit-constructor)
  OperatorExpression(GeneratorWord w) { terms_.push_back({1, std::move(w)}); }  // NOLINT(google-explicit-constructor)

  const std::vector<Term>& terms() const { return terms_; }

  OperatorExpression& operator+=(const OperatorExpression& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    return *this;
  }
  friend OperatorExpression operator+(OperatorExpression a, const OperatorExpression& b) { return a += b; }
  friend OperatorExpression operator-(OperatorExpression a, const OperatorExpression& b) {
    return a += Rational(-1) * b;
  }
  friend OperatorExpression operator*(const Rational& s, OperatorExpression e) {
    for (auto& [c, w] : e.terms_) c *= s;
    return e;
  }
  /// Operator product: a acts after b.
  friend OperatorExpression operator*(const OperatorExpression& a, const OperatorExpression& b) {
    OperatorExpression out;
    for (const auto& [ca, wa] : a.terms_) {
      for (const auto& [cb, wb] : b.terms_) {
        GeneratorWord w;
        w.scalar = wa.scalar * wb.scalar;
        for (Generator g : wa.letters) {
          if (g != Generator::Identity) w.letters.push_back(g);
        }
        for (Generator g : wb.letters) {
          if (g != Generator::Identity) w.letters.push_back(g);
        }
        if (w.letters.empty()) w.letters.push_back(Generator::Identity);
        out.terms_.push_back({ca * cb, std::move(w)});
      }
    }
    return out;
  }

  OperatorExpression pow(int k) const {
    if (k < 0) throw DomainError("OperatorExpression::pow: negative power");
    OperatorExpression out(Rational(1));
    for (int i = 0; i < k; ++i) out = *this * out;
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (const auto& [c, w] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + render_rational(c) + ")*[" + w.to_string() + "]";
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<Term> terms_;
};

inline ParabolicVector expression_apply(const OperatorExpression& e, const ParabolicVector& v) {
  ParabolicVector out(v.n());
  for (const auto& [s, c] : v.entries()) {
    for (const auto& [coef, w] : e.terms()) {
      if (coef == 0) continue;
      if (auto step = word_step(w, v.n(), s)) {
        out.add(step->target, c * step->coeff.to_radical() * RadicalSum(coef * w.scalar));
      }
    }
  }
  return out;
}

inline ManifoldState expression_apply(const OperatorExpression& e, const ManifoldState& st) {
  return detail::extract(expression_apply(e, detail::embed(st)), st.m(), "expression_apply");
}

/// <p| e |p>.
inline RadicalSum expression_expectation(const OperatorExpression& e, const ParabolicLabel& p) {
  p.validate();
  const ZeemanIndex s = ZeemanIndex::of(p);
  RadicalSum out;
  for (const auto& [coef, w] : e.terms()) {
    if (coef == 0) continue;
    auto step = word_step(w, p.n(), s);
    if (step && step->target == s) out += step->coeff.to_radical() * RadicalSum(coef * w.scalar);
  }
  return out;
}

/// <q'| e |q> over the (n, m) parabolic block; rows q', columns q, both increasing.
/// Throws DomainError when e moves weight out of the block.
inline ExactMatrix expression_matrix(const OperatorExpression& e, int n, int m) {
  const auto block = parabolic_block(n, m);
  const int dim = static_cast<int>(block.size());
  ExactMatrix out(dim, dim);
  for (int c = 0; c < dim; ++c) {
    ParabolicVector col = expression_apply(e, ParabolicVector::basis(block[static_cast<std::size_t>(c)]));
    for (const auto& [s, v] : col.entries()) {
      if (s.m() != m) throw DomainError("expression_matrix: operator does not conserve m");
      const int r = (s.q() + dim - 1) / 2;
      out(r, c) = v * RadicalSum(parabolic_phase(n, s));
    }
  }
  return out;
}

// Standard expressions in the generators.
namespace ops {

inline OperatorExpression j1z() { return Generator::J1z; }
inline OperatorExpression j2z() { return Generator::J2z; }
inline OperatorExpression j1p() { return Generator::J1Plus; }
inline OperatorExpression j1m() { return Generator::J1Minus; }
inline OperatorExpression j2p() { return Generator::J2Plus; }
inline OperatorExpression j2m() { return Generator::J2Minus; }

/// j^2 = jz^2 + (j+ j- + j- j+)/2.
inline OperatorExpression j1_squared() { return j1z() * j1z() + Rational(1, 2) * (j1p() * j1m() + j1m() * j1p()); }
inline OperatorExpression j2_squared() { return j2z() * j2z() + Rational(1, 2) * (j2p() * j2m() + j2m() * j2p()); }

/// j1.j2 = j1z j2z + (j1+ j2- + j1- j2+)/2.
inline OperatorExpression j1_dot_j2() { return j1z() * j2z() + Rational(1, 2) * (j1p() * j2m() + j1m() * j2p()); }

inline OperatorExpression lz() { return j1z() + j2z(); }
inline OperatorExpression az() { return j1z() - j2z(); }
inline OperatorExpression l_squared() { return j1_squared() + j2_squared() + Rational(2) * j1_dot_j2(); }
inline OperatorExpression a_squared() { return j1_squared() + j2_squared() - Rational(2) * j1_dot_j2(); }

}  // namespace ops

}  // namespace so4

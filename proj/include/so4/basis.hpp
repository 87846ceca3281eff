#pragma once

#include <cmath>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include "so4/errors.hpp"
#include "so4/matrix.hpp"
#include "so4/radical_sum.hpp"
#include "so4/wigner.hpp"

namespace so4 {

/// |n l m>, |m| <= l <= n - 1.
struct SphericalLabel {
  int n = 1;
  int l = 0;
  int m = 0;

  bool valid() const { return n >= 1 && std::abs(m) <= l && l <= n - 1; }
  void validate() const {
    if (!valid()) {
      throw DomainError("invalid spherical label n=" + std::to_string(n) + " l=" + std::to_string(l) +
                        " m=" + std::to_string(m));
    }
  }
};

/// |n1 n2 m> with n = n1 + n2 + |m| + 1 and electric quantum number q = n1 - n2.
struct ParabolicLabel {
  int n1 = 0;
  int n2 = 0;
  int m = 0;

  int n() const { return n1 + n2 + std::abs(m) + 1; }
  int q() const { return n1 - n2; }

  static ParabolicLabel from_nq(int n, int m, int q) {
    const int width = n - std::abs(m) - 1;
    if (n < 1 || width < 0 || std::abs(q) > width || (width - q) % 2 != 0) {
      throw DomainError("no parabolic state with n=" + std::to_string(n) + " m=" + std::to_string(m) +
                        " q=" + std::to_string(q));
    }
    return {(width + q) / 2, (width - q) / 2, m};
  }

  void validate() const {
    if (n1 < 0 || n2 < 0) {
      throw DomainError("parabolic quantum numbers must be nonnegative: n1=" + std::to_string(n1) +
                        " n2=" + std::to_string(n2));
    }
  }

  std::string to_string() const {
    return "(n=" + std::to_string(n()) + ", m=" + std::to_string(m) + ", n1=" + std::to_string(n1) +
           ", n2=" + std::to_string(n2) + ")";
  }

  friend bool operator==(const ParabolicLabel&, const ParabolicLabel&) = default;
};

/// All parabolic labels of the (n, m) block in increasing q.
inline std::vector<ParabolicLabel> parabolic_block(int n, int m) {
  std::vector<ParabolicLabel> out;
  const int width = n - std::abs(m) - 1;
  for (int n1 = 0; n1 <= width; ++n1) out.push_back({n1, width - n1, m});
  return out;
}

namespace detail {

inline void check_l_range(const ParabolicLabel& p, int l, const char* who) {
  p.validate();
  if (l < std::abs(p.m) || l > p.n() - 1) {
    throw DomainError(std::string(who) + ": l=" + std::to_string(l) + " outside [" + std::to_string(std::abs(p.m)) +
                      ", " + std::to_string(p.n() - 1) + "] for " + p.to_string());
  }
}

inline int b_phase(const ParabolicLabel& p, int l) { return parity_sign(p.n2 + (p.m - std::abs(p.m)) / 2 + l); }

}  // namespace detail

/// Parabolic -> spherical coefficient <n l m | n1 n2 m> through the 3jm
/// ((n-1)/2 (n-1)/2 l; (m-q)/2 (m+q)/2 -m). Canonical definition.
inline RadicalSum b_coeff(const ParabolicLabel& p, int l) {
  detail::check_l_range(p, l, "b_coeff");
  const int big_j = p.n() - 1;
  const int q = p.q();
  RadicalSum w = wigner_3jm(ThreeJmArgs::from_twice(big_j, big_j, 2 * l, p.m - q, p.m + q, -2 * p.m));
  return w * RadicalSum::scaled_sqrt(detail::b_phase(p, l), PFRational::from_int(2 * l + 1));
}

/// Same coefficient through the Regge-equivalent symbol
/// ((n-1+m)/2 (n-1-m)/2 l; -q/2 q/2 0).
inline RadicalSum b_coeff_regge_route(const ParabolicLabel& p, int l) {
  detail::check_l_range(p, l, "b_coeff_regge_route");
  const int n = p.n();
  const int q = p.q();
  RadicalSum w = wigner_3jm(ThreeJmArgs::from_twice(n - 1 + p.m, n - 1 - p.m, 2 * l, -q, q, 0));
  return w * RadicalSum::scaled_sqrt(detail::b_phase(p, l), PFRational::from_int(2 * l + 1));
}

/// Terminating 3F2(a1, a2, a3; b1, b2; 1) in exact arithmetic. One of the
/// upper parameters must be a nonpositive integer; lower parameters must not
/// hit zero before the series terminates.
inline Rational hypergeometric_3f2_unit(int a1, int a2, int a3, int b1, int b2) {
  Rational sum = 0;
  Rational term = 1;
  for (int k = 0;; ++k) {
    sum += term;
    const long num = static_cast<long>(a1 + k) * (a2 + k) * (a3 + k);
    if (num == 0) break;
    const long den = static_cast<long>(b1 + k) * (b2 + k) * (k + 1);
    if (den == 0) throw DomainError("3F2: lower parameter reached zero before termination");
    term *= make_rational(num, den);
  }
  return sum;
}

namespace detail {

inline RadicalSum b_coeff_3f2_impl(const ParabolicLabel& p, int l, const PFRational& radicand) {
  const int n = p.n(), m = p.m;
  const auto& f = [](int k) -> const PFRational& { return pf_factorial(k); };
  const Rational ratio = (f(n - m - 1) / f(m)).to_rational();
  const Rational series = hypergeometric_3f2_unit(l + m + 1, -(l - m), -p.n1, m + 1, -(n - m - 1));
  return RadicalSum::scaled_sqrt(Rational(parity_sign(l - m)) * ratio * series, radicand);
}

inline void check_3f2_domain(const ParabolicLabel& p, int l, const char* who) {
  check_l_range(p, l, who);
  if (p.m < 0) {
    throw DomainError(std::string(who) + ": the hypergeometric form needs m >= 0 (got m=" + std::to_string(p.m) +
                      "); use b_coeff for negative m");
  }
}

}  // namespace detail

/// Hypergeometric form (-1)^{l-m} (n-m-1)!/m! sqrt(R) 3F2(l+m+1, -(l-m), -n1; m+1, -(n-m-1); 1)
/// with R = (2l+1)(l+m)!(n1+m)!(n2+m)! / (n1! n2! (n+l)! (l-m)! (n-l-1)!).
/// Agrees with b_coeff up to the label-wide sign (-1)^{n-m-1}. m >= 0 only.
inline RadicalSum b_coeff_3f2(const ParabolicLabel& p, int l) {
  detail::check_3f2_domain(p, l, "b_coeff_3f2");
  const int n = p.n(), m = p.m;
  const auto& f = [](int k) -> const PFRational& { return pf_factorial(k); };
  PFRational radicand = PFRational::from_int(2 * l + 1) * f(l + m) * f(p.n1 + m) * f(p.n2 + m) /
                        (f(p.n1) * f(p.n2) * f(n + l) * f(l - m) * f(n - l - 1));
  return detail::b_coeff_3f2_impl(p, l, radicand);
}

/// The hypergeometric form with the radicand
/// (n1+n2)!(n1+n2+2m)! / (n1! n2! (n+l)! (l-m)! (n-l-1)!) taken literally.
/// Kept as a diagnostic: it does not reproduce |b_coeff|.
inline RadicalSum b_coeff_3f2_printed(const ParabolicLabel& p, int l) {
  detail::check_3f2_domain(p, l, "b_coeff_3f2_printed");
  const int n = p.n(), m = p.m;
  const auto& f = [](int k) -> const PFRational& { return pf_factorial(k); };
  PFRational radicand = f(p.n1 + p.n2) * f(p.n1 + p.n2 + 2 * m) / (f(p.n1) * f(p.n2) * f(n + l) * f(l - m) * f(n - l - 1));
  return detail::b_coeff_3f2_impl(p, l, radicand);
}

enum class BSpecialCase {
  LEqualsM,  ///< l = m
  TopL,      ///< l = n - 1
  SecondL,   ///< l = n - 2
};

/// Closed forms for particular l; oracles for b_coeff (magnitudes agree,
/// signs follow their own conventions).
inline SqrtRational b_special(const ParabolicLabel& p, BSpecialCase which) {
  p.validate();
  const int n = p.n(), m = p.m, n1 = p.n1, n2 = p.n2;
  if (m < 0) throw DomainError("b_special: closed forms require m >= 0");
  const auto& f = [](int k) -> const PFRational& { return pf_factorial(k); };
  switch (which) {
    case BSpecialCase::LEqualsM: {
      const int l = m;
      PFRational sq = f(2 * l + 1) * f(n1 + l) * f(n2 + l) * f(n - l - 1) / (f(n1) * f(n2) * f(n + l)) /
                      f(l).pow(2);
      return SqrtRational(1, sq);
    }
    case BSpecialCase::TopL: {
      PFRational sq = f(n - 1).pow(2) * f(n1 + n2) * f(n1 + n2 + 2 * m) /
                      (f(n1) * f(n2) * f(2 * n - 2) * f(n1 + m) * f(n2 + m));
      return SqrtRational(parity_sign(n2), sq);
    }
    case BSpecialCase::SecondL: {
      if (n - 2 < m) throw DomainError("b_special: l = n-2 lies below |m| for " + p.to_string());
      if (n1 == n2) return {};
      PFRational sq = PFRational::from_int(static_cast<std::int64_t>(n1 - n2) * (n1 - n2)) * f(n - 1).pow(2) *
                      PFRational::from_int(2 * n - 3) * f(n1 + n2 - 1) * f(n1 + n2 + 2 * m - 1) /
                      (f(n1) * f(n2) * f(2 * n - 2) * f(n1 + m) * f(n2 + m));
      return SqrtRational(parity_sign(n2) * (n1 > n2 ? 1 : -1), sq);
    }
  }
  throw DomainError("b_special: unknown case");
}

/// (2l+1)/n exp(-l(l+1)/n): large-n, small-l form of B^2(l) at m = 0.
/// It tracks the extreme Stark states |q| = n-1; diagnostic only.
inline double b_squared_asymptotic(int n, int l) {
  if (n < 1 || l < 0 || l > n - 1) throw DomainError("b_squared_asymptotic: need 0 <= l <= n-1");
  return (2.0 * l + 1.0) / n * std::exp(-static_cast<double>(l) * (l + 1) / n);
}

/// B(l) for l = |m| .. n-1.
inline std::vector<RadicalSum> b_vector(const ParabolicLabel& p) {
  std::vector<RadicalSum> out;
  for (int l = std::abs(p.m); l <= p.n() - 1; ++l) out.push_back(b_coeff(p, l));
  return out;
}

/// Orthogonal change-of-basis matrix of the (n, m) block: rows indexed by
/// q (increasing), columns by l (increasing).
inline ExactMatrix b_matrix(int n, int m) {
  const auto block = parabolic_block(n, m);
  const int dim = static_cast<int>(block.size());
  ExactMatrix out(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) out(r, c) = b_coeff(block[static_cast<std::size_t>(r)], std::abs(m) + c);
  }
  return out;
}

enum class Basis { Spherical, Parabolic };

/// Coefficient vector inside one (n, m) block, over l (spherical) or q (parabolic).
class ManifoldState {
 public:
  ManifoldState(Basis basis, int n, int m) : basis_(basis), n_(n), m_(m) {
    if (n < 1 || std::abs(m) > n - 1) {
      throw DomainError("no (n, m) block with n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
    coeffs_.resize(static_cast<std::size_t>(n - std::abs(m)));
  }
  ManifoldState(Basis basis, int n, int m, std::vector<RadicalSum> coeffs) : ManifoldState(basis, n, m) {
    if (coeffs.size() != coeffs_.size()) throw DomainError("ManifoldState: coefficient count does not match block");
    coeffs_ = std::move(coeffs);
  }

  static ManifoldState unit_spherical(const SphericalLabel& s) {
    s.validate();
    ManifoldState st(Basis::Spherical, s.n, s.m);
    st.at_l(s.l) = 1;
    return st;
  }
  static ManifoldState unit_parabolic(const ParabolicLabel& p) {
    p.validate();
    ManifoldState st(Basis::Parabolic, p.n(), p.m);
    st.at_q(p.q()) = 1;
    return st;
  }

  Basis basis() const { return basis_; }
  int n() const { return n_; }
  int m() const { return m_; }
  int size() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<RadicalSum>& coeffs() const { return coeffs_; }
  std::vector<RadicalSum>& coeffs() { return coeffs_; }

  /// l (spherical) or q (parabolic) of the i-th coefficient.
  int label_at(int i) const { return basis_ == Basis::Spherical ? std::abs(m_) + i : 2 * i - (size() - 1); }

  RadicalSum& at_l(int l) { return coeffs_.at(spherical_index(l)); }
  const RadicalSum& at_l(int l) const { return coeffs_.at(spherical_index(l)); }
  RadicalSum& at_q(int q) { return coeffs_.at(parabolic_index(q)); }
  const RadicalSum& at_q(int q) const { return coeffs_.at(parabolic_index(q)); }

  RadicalSum norm_squared() const {
    RadicalSum s;
    for (const auto& c : coeffs_) s += c * c;
    return s;
  }

  ManifoldState& operator+=(const ManifoldState& o) {
    check_compatible(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  friend ManifoldState operator*(const RadicalSum& s, ManifoldState st) {
    for (auto& c : st.coeffs_) c = s * c;
    return st;
  }

  friend bool operator==(const ManifoldState&, const ManifoldState&) = default;

 private:
  std::size_t spherical_index(int l) const {
    if (basis_ != Basis::Spherical) throw DomainError("ManifoldState: l-indexing a parabolic state");
    if (l < std::abs(m_) || l > n_ - 1) throw DomainError("ManifoldState: l=" + std::to_string(l) + " out of block");
    return static_cast<std::size_t>(l - std::abs(m_));
  }
  std::size_t parabolic_index(int q) const {
    if (basis_ != Basis::Parabolic) throw DomainError("ManifoldState: q-indexing a spherical state");
    const int width = size() - 1;
    if (std::abs(q) > width || (width - q) % 2 != 0) {
      throw DomainError("ManifoldState: q=" + std::to_string(q) + " out of block");
    }
    return static_cast<std::size_t>((q + width) / 2);
  }
  void check_compatible(const ManifoldState& o) const {
    if (o.basis_ != basis_ || o.n_ != n_ || o.m_ != m_) throw DomainError("ManifoldState: incompatible states");
  }

  Basis basis_;
  int n_;
  int m_;
  std::vector<RadicalSum> coeffs_;
};

/// c_l = sum_q a_q B_q(l).
inline ManifoldState to_spherical(const ManifoldState& st) {
  if (st.basis() != Basis::Parabolic) throw DomainError("to_spherical: input must be parabolic");
  const ExactMatrix b = b_matrix(st.n(), st.m());
  ManifoldState out(Basis::Spherical, st.n(), st.m());
  for (int c = 0; c < st.size(); ++c) {
    RadicalSum acc;
    for (int r = 0; r < st.size(); ++r) {
      if (!st.coeffs()[static_cast<std::size_t>(r)].is_zero()) acc += st.coeffs()[static_cast<std::size_t>(r)] * b(r, c);
    }
    out.coeffs()[static_cast<std::size_t>(c)] = std::move(acc);
  }
  return out;
}

/// a_q = sum_l c_l B_q(l).
inline ManifoldState to_parabolic(const ManifoldState& st) {
  if (st.basis() != Basis::Spherical) throw DomainError("to_parabolic: input must be spherical");
  const ExactMatrix b = b_matrix(st.n(), st.m());
  ManifoldState out(Basis::Parabolic, st.n(), st.m());
  for (int r = 0; r < st.size(); ++r) {
    RadicalSum acc;
    for (int c = 0; c < st.size(); ++c) {
      if (!st.coeffs()[static_cast<std::size_t>(c)].is_zero()) acc += st.coeffs()[static_cast<std::size_t>(c)] * b(r, c);
    }
    out.coeffs()[static_cast<std::size_t>(r)] = std::move(acc);
  }
  return out;
}

}  // namespace so4

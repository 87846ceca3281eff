#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "so4/errors.hpp"
#include "so4/matrix.hpp"
#include "so4/operators.hpp"

namespace so4 {

struct DiamagneticParams {
  double gamma = 0.0;  ///< cyclotron frequency over the Rydberg constant
  int n = 1;

  void validate() const {
    if (!(gamma >= 0.0)) throw DomainError("DiamagneticParams: gamma must be nonnegative");
    if (n < 1) throw DomainError("DiamagneticParams: n must be positive");
  }
};

/// H1 = h1_scale * (matrix); H2 = h2_scale * (matrix).
inline double h1_scale(const DiamagneticParams& p) {
  p.validate();
  return p.gamma * p.gamma * p.n * p.n / 16.0;
}
inline double h2_scale(const DiamagneticParams& p) {
  p.validate();
  const double g = p.gamma * p.gamma / 8.0;
  return g * g * std::pow(static_cast<double>(p.n), 6) / 48.0;
}
inline constexpr const char* kH1ScaleText = "gamma^2 n^2 / 16";
inline constexpr const char* kH2ScaleText = "(gamma^2 / 8)^2 n^6 / 48";

namespace detail {

inline Rational n_poly(int n, std::int64_t c2, std::int64_t c0) { return Rational(c2 * n * n + c0); }

}  // namespace detail

/// 3n^2 + 1 - 4 j1z^2 - 4 j2z^2 + 4 j1z j2z - 4 j1+ j2- - 4 j1- j2+.
inline OperatorExpression h1_generator_form(int n) {
  using namespace ops;
  return OperatorExpression(detail::n_poly(n, 3, 1)) - Rational(4) * (j1z() * j1z()) - Rational(4) * (j2z() * j2z()) +
         Rational(4) * (j1z() * j2z()) - Rational(4) * (j1p() * j2m()) - Rational(4) * (j1m() * j2p());
}

/// n^2 + 3 + Lz^2 + 4 A^2 - 5 Az^2.
inline OperatorExpression h1_invariant_form(int n) {
  using namespace ops;
  return OperatorExpression(detail::n_poly(n, 1, 3)) + lz() * lz() + Rational(4) * a_squared() -
         Rational(5) * (az() * az());
}

inline ExactMatrix h1_matrix(int n, int m) { return expression_matrix(h1_generator_form(n), n, m); }
inline ExactMatrix h1_invariant_matrix(int n, int m) { return expression_matrix(h1_invariant_form(n), n, m); }

/// One printed group of the second-order operator and its encoding.
struct H2AuditRow {
  std::string printed;
  OperatorExpression expr;
};

/// The second-order operator (without its prefactor), one row per printed group.
inline std::vector<H2AuditRow> h2_audit_table(int n) {
  using namespace ops;
  const OperatorExpression z1sq = j1z() * j1z(), z2sq = j2z() * j2z(), z12 = j1z() * j2z();
  const OperatorExpression zsum = z1sq + z2sq;
  const OperatorExpression x_plus = j1p() * j2m() + j1m() * j2p();
  const OperatorExpression x_minus = j1p() * j2m() - j1m() * j2p();
  const std::int64_t n2 = static_cast<std::int64_t>(n) * n;
  return {
      {"-223n^4 - 598n^2 - 27", OperatorExpression(Rational(-223 * n2 * n2 - 598 * n2 - 27))},
      {"192(j1z^4 + j2z^4)", Rational(192) * (z1sq * z1sq + z2sq * z2sq)},
      {"144 j1z^2 j2z^2", Rational(144) * (z1sq * z2sq)},
      {"-(176n^2 + 752) j1z j2z", Rational(-(176 * n2 + 752)) * z12},
      {"(j1z^2 + j2z^2)(-32 j1z j2z)", zsum * (Rational(-32) * z12)},
      {"(j1z^2 + j2z^2)(284n^2 + 372)", Rational(284 * n2 + 372) * zsum},
      {"8(j1+j2- + j1-j2+)(53n^2 + 153)", Rational(8 * (53 * n2 + 153)) * x_plus},
      {"8(j1+j2- + j1-j2+)(20(j1z^2 + j2z^2))", Rational(8) * (x_plus * (Rational(20) * zsum))},
      {"8(j1+j2- + j1-j2+)(-12 j1z j2z)", Rational(8) * (x_plus * (Rational(-12) * z12))},
      {"208(j1+j2- - j1-j2+)(j1z - j2z)", Rational(208) * (x_minus * az())},
      {"48(j1+^2 j2-^2 + j1-^2 j2+^2)",
       Rational(48) * (j1p() * j1p() * j2m() * j2m() + j1m() * j1m() * j2p() * j2p())},
  };
}

inline OperatorExpression h2_expression(int n) {
  OperatorExpression e;
  for (const auto& row : h2_audit_table(n)) e += row.expr;
  return e;
}

/// Matrix of the literal encoding; may be asymmetric (see h2_symmetry_report).
inline ExactMatrix h2_matrix(int n, int m) { return expression_matrix(h2_expression(n), n, m); }

struct SymmetryReport {
  bool symmetric = true;
  std::vector<std::string> asymmetric_rows;  ///< audit rows whose own block is not symmetric
  ExactMatrix antisymmetric_part;            ///< M - M^T
};

inline SymmetryReport h2_symmetry_report(int n, int m) {
  SymmetryReport r;
  const ExactMatrix full = h2_matrix(n, m);
  r.antisymmetric_part = full - full.transpose();
  r.symmetric = r.antisymmetric_part.is_zero();
  for (const auto& row : h2_audit_table(n)) {
    if (!expression_matrix(row.expr, n, m).is_symmetric()) r.asymmetric_rows.push_back(row.printed);
  }
  return r;
}

}  // namespace so4

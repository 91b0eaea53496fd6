#pragma once

#include <vector>

#include "tdpert/parallel_system.hpp"
#include "tdpert/polynomial.hpp"
#include "tdpert/split_sequence.hpp"

namespace tdpert {

/// P(x) = Σ (-1)^i ζ_i x^i / ([i]!_q)^2, kept together with the ζ it came from.
struct DrinfeldPolynomial {
  Polynomial poly;
  std::vector<Rational> source_zeta;
  QContext q_ctx;

  [[nodiscard]] Rational operator()(const Rational& x) const { return poly_eval(poly, x); }
};

inline DrinfeldPolynomial drinfeld_poly(const std::vector<Rational>& zeta, const QContext& ctx) {
  if (zeta.empty() || zeta.front() != Rational(1)) throw PreconditionError("drinfeld_poly: zeta_0 must be 1");
  std::vector<Rational> coeffs;
  coeffs.reserve(zeta.size());
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    const Rational fact = q_factorial(ctx, static_cast<long>(i));
    const Rational sign = i % 2 == 0 ? Rational(1) : Rational(-1);
    coeffs.push_back(sign * zeta[i] / (fact * fact));
  }
  return {Polynomial(std::move(coeffs)), zeta, ctx};
}

/// (q - q^-1)^2
inline Rational qserre_scale(const QContext& ctx) {
  const Rational s = ctx.q_minus_inverse();
  return s * s;
}

/// t != 0 and P(t / (q - q^-1)^2) != 0.
inline bool predict_td(const DrinfeldPolynomial& p, const Rational& t) {
  return !t.is_zero() && !p(t / qserre_scale(p.q_ctx)).is_zero();
}

/// Σ η_{d-i}(θ0) η*_{d-i}(θ*0) ζ_i against
/// (-1)^d ([d]!_q)^2 (q - q^-1)^{2d} P(1 / (q - q^-1)^2), each side computed
/// on its own.
inline bool check_weighted_sum_identity(const ParameterArray& pa, const QContext& ctx) {
  const QContext local(ctx.q, pa.d);
  const auto [theta, theta_star] = geometric_eigenvalues(local);
  if (pa.theta != theta || pa.theta_star != theta_star) {
    throw PreconditionError("check_weighted_sum_identity: requires theta_i = q^(2i-d), theta*_i = q^(d-2i)");
  }
  const auto d = static_cast<std::size_t>(pa.d);
  const EtaTau p = eta_tau_polys(pa);
  Rational lhs(0);
  for (std::size_t i = 0; i <= d; ++i) {
    lhs += poly_eval(p.eta[d - i], pa.theta[0]) * poly_eval(p.eta_star[d - i], pa.theta_star[0]) * pa.zeta[i];
  }
  const DrinfeldPolynomial drinfeld = drinfeld_poly(pa.zeta, local);
  const Rational scale = qserre_scale(local);
  const Rational fact = q_factorial(local, pa.d);
  const Rational sign = pa.d % 2 == 0 ? Rational(1) : Rational(-1);
  const Rational rhs = sign * fact * fact * scale.pow(pa.d) * drinfeld(scale.inverse());
  return lhs == rhs;
}

/// Nonzero rational t with P(t / (q - q^-1)^2) = 0, ascending. The excluded
/// value t = 0 is not listed.
inline std::vector<Rational> rational_bad_t(const DrinfeldPolynomial& p) {
  if (p.poly.degree() < 1) return {};
  const Rational scale = qserre_scale(p.q_ctx);
  std::vector<Rational> out;
  for (const auto& root : rational_roots(p.poly)) {
    if (!root.is_zero()) out.push_back(scale * root);
  }
  return out;
}

}  // namespace tdpert

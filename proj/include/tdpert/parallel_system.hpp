#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tdpert/matrix.hpp"
#include "tdpert/polynomial.hpp"
#include "tdpert/rational.hpp"
#include "tdpert/subspace.hpp"

namespace tdpert {

/// (d, θ, θ*, ζ): eigenvalue sequence, dual eigenvalue sequence and split
/// sequence of a sharp system.
struct ParameterArray {
  int d = 0;
  std::vector<Rational> theta;
  std::vector<Rational> theta_star;
  std::vector<Rational> zeta;

  /// Throws PreconditionError unless lengths are d+1, both eigenvalue lists
  /// are duplicate-free and ζ0 = 1.
  void validate() const {
    const auto len = static_cast<std::size_t>(d + 1);
    if (d < 0 || theta.size() != len || theta_star.size() != len || zeta.size() != len) {
      throw PreconditionError("parameter array: every sequence must have d+1 entries");
    }
    auto distinct = [](std::vector<Rational> v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!distinct(theta) || !distinct(theta_star)) {
      throw PreconditionError("parameter array: repeated eigenvalue");
    }
    if (zeta.front() != Rational(1)) throw PreconditionError("parameter array: zeta_0 must be 1");
  }

  friend bool operator==(const ParameterArray&, const ParameterArray&) = default;
};

/// (A; {E_i}; A*; {E*_i}) with the eigenvalue orderings that go with the
/// two idempotent families.
struct ParallelSystem {
  QContext ctx;
  Matrix A;
  Matrix A_star;
  std::vector<Matrix> E;
  std::vector<Matrix> E_star;
  std::vector<Rational> theta;
  std::vector<Rational> theta_star;

  [[nodiscard]] int diameter() const { return static_cast<int>(theta.size()) - 1; }
  [[nodiscard]] std::size_t dim() const { return A.rows(); }
};

/// E_i = prod_{j != i} (A - θ_j I) / (θ_i - θ_j).
///
/// Requires distinct θ, prod_i (A - θ_i I) = 0 and every θ_i an eigenvalue;
/// otherwise throws PreconditionError naming the failed hypothesis.
inline std::vector<Matrix> primitive_idempotents(const Matrix& a, const std::vector<Rational>& theta) {
  require_square(a, "primitive_idempotents");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < theta.size(); ++i) {
    for (std::size_t j = i + 1; j < theta.size(); ++j) {
      if (theta[i] == theta[j]) throw PreconditionError("primitive_idempotents: repeated eigenvalue " + theta[i].str());
    }
  }
  if (theta.empty()) throw PreconditionError("primitive_idempotents: empty eigenvalue list");

  const Matrix id = Matrix::identity(n);
  std::vector<Matrix> shifted;
  shifted.reserve(theta.size());
  for (const auto& t : theta) shifted.push_back(a - t * id);

  Matrix annihilator = id;
  for (const auto& s : shifted) annihilator = annihilator * s;
  if (!annihilator.is_zero()) {
    throw PreconditionError("primitive_idempotents: prod (A - theta_i I) != 0, spectrum not contained in the given list");
  }

  std::vector<Matrix> out;
  out.reserve(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    Matrix e = id;
    Rational denom(1);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      if (j == i) continue;
      e = e * shifted[j];
      denom *= theta[i] - theta[j];
    }
    e *= denom.inverse();
    if (e.is_zero()) {
      throw PreconditionError("primitive_idempotents: " + theta[i].str() + " is not an eigenvalue (E_" +
                              std::to_string(i) + " = 0)");
    }
    out.push_back(std::move(e));
  }
  return out;
}

/// Builds the parallel system on (A, A*) with idempotents recomputed from the
/// eigenvalue lists.
inline ParallelSystem assemble_system(const Rational& q, Matrix a, Matrix a_star, std::vector<Rational> theta,
                                      std::vector<Rational> theta_star) {
  if (theta.size() != theta_star.size()) throw PreconditionError("eigenvalue sequences differ in length");
  if (!a.is_square() || a.rows() == 0 || a.rows() != a_star.rows() || a.cols() != a_star.cols()) {
    throw ShapeError("A and A* must be nonempty square matrices of equal size");
  }
  ParallelSystem ps;
  ps.ctx = QContext(q, static_cast<int>(theta.size()) - 1);
  ps.E = primitive_idempotents(a, theta);
  ps.E_star = primitive_idempotents(a_star, theta_star);
  ps.A = std::move(a);
  ps.A_star = std::move(a_star);
  ps.theta = std::move(theta);
  ps.theta_star = std::move(theta_star);
  return ps;
}

/// η_i, η*_i, τ_i, τ*_i for i = 0..d.
struct EtaTau {
  std::vector<Polynomial> eta;
  std::vector<Polynomial> eta_star;
  std::vector<Polynomial> tau;
  std::vector<Polynomial> tau_star;
};

/// (x - θ_{d}) (x - θ_{d-1}) ... (x - θ_{d-i+1})
inline Polynomial eta_poly(const std::vector<Rational>& theta, int i) {
  const int d = static_cast<int>(theta.size()) - 1;
  std::vector<Rational> roots;
  for (int k = 0; k < i; ++k) roots.push_back(theta[static_cast<std::size_t>(d - k)]);
  return poly_from_roots(roots);
}

/// (x - θ_0) (x - θ_1) ... (x - θ_{i-1})
inline Polynomial tau_poly(const std::vector<Rational>& theta, int i) {
  return poly_from_roots(std::vector<Rational>(theta.begin(), theta.begin() + i));
}

inline EtaTau eta_tau_polys(const std::vector<Rational>& theta, const std::vector<Rational>& theta_star) {
  EtaTau out;
  const auto len = static_cast<int>(theta.size());
  for (int i = 0; i < len; ++i) {
    out.eta.push_back(eta_poly(theta, i));
    out.eta_star.push_back(eta_poly(theta_star, i));
    out.tau.push_back(tau_poly(theta, i));
    out.tau_star.push_back(tau_poly(theta_star, i));
  }
  return out;
}

inline EtaTau eta_tau_polys(const ParameterArray& pa) { return eta_tau_polys(pa.theta, pa.theta_star); }

/// η_d = Σ η_{d-i}(θ0) τ_i and the starred counterpart, coefficientwise.
inline bool check_eta_tau_sums(const ParameterArray& pa) {
  const EtaTau p = eta_tau_polys(pa);
  const auto d = static_cast<std::size_t>(pa.d);
  Polynomial lhs;
  Polynomial lhs_star;
  for (std::size_t i = 0; i <= d; ++i) {
    lhs += poly_eval(p.eta[d - i], pa.theta[0]) * p.tau[i];
    lhs_star += poly_eval(p.eta_star[d - i], pa.theta_star[0]) * p.tau_star[i];
  }
  return lhs == p.eta[d] && lhs_star == p.eta_star[d];
}

/// Left-hand sides of the two q-Serre relations
///   A^3 A* - [3]_q A^2 A* A + [3]_q A A* A^2 - A* A^3
///   A*^3 A - [3]_q A*^2 A A* + [3]_q A* A A*^2 - A A*^3
inline std::pair<Matrix, Matrix> qserre_residuals(const Matrix& a, const Matrix& a_star, const QContext& ctx) {
  require_square(a, "qserre_residuals");
  if (a.rows() != a_star.rows() || !a_star.is_square()) throw ShapeError("qserre_residuals: shape mismatch");
  const Rational c3 = q_int(ctx, 3);
  auto residual = [&c3](const Matrix& x, const Matrix& y) {
    const Matrix x2 = x * x;
    const Matrix x3 = x2 * x;
    return x3 * y - c3 * (x2 * y * x) + c3 * (x * y * x2) - y * x3;
  };
  return {residual(a, a_star), residual(a_star, a)};
}

/// The two commutator expressions
///   [A, A^2 A* - β A A* A + A* A^2 - γ (A A* + A* A) - ρ A*]
///   [A*, A*^2 A - β A* A A* + A A*^2 - γ* (A A* + A* A) - ρ* A]
inline std::pair<Matrix, Matrix> tridiagonal_relation_residuals(const Matrix& a, const Matrix& a_star,
                                                                const Rational& beta, const Rational& gamma,
                                                                const Rational& gamma_star, const Rational& rho,
                                                                const Rational& rho_star) {
  require_square(a, "tridiagonal_relation_residuals");
  if (a.rows() != a_star.rows() || !a_star.is_square()) {
    throw ShapeError("tridiagonal_relation_residuals: shape mismatch");
  }
  auto commutator = [](const Matrix& x, const Matrix& y) { return x * y - y * x; };
  const Matrix anti = a * a_star + a_star * a;
  const Matrix inner = a * a * a_star - beta * (a * a_star * a) + a_star * a * a - gamma * anti - rho * a_star;
  const Matrix inner_star =
      a_star * a_star * a - beta * (a_star * a * a_star) + a * a_star * a_star - gamma_star * anti - rho_star * a;
  return {commutator(a, inner), commutator(a_star, inner_star)};
}

/// Outcome of checking the tridiagonal-system and mock-system axioms.
struct AxiomReport {
  bool is_parallel = false;
  bool is_sharp = false;
  bool td_band_ok = false;    ///< E_i A* E_j = 0 and E*_i A E*_j = 0 for |i - j| > 1
  bool irreducible = false;   ///< generated algebra of (A, A*) is all of End(V)
  bool mock_corners_ok = false;    ///< E*_0 E_0 E*_0 != 0 and E*_0 E_d E*_0 != 0
  bool qserre_ok = false;
  bool is_td_system = false;
  bool is_mock_td_system = false;
  std::size_t algebra_dim = 0;
  std::optional<Subspace> witness;
  std::vector<std::string> issues;

  /// First failing axiom in the order parallel, band, irreducibility.
  [[nodiscard]] std::optional<std::string> failing_axiom() const {
    if (!is_parallel) return "parallel";
    if (!td_band_ok) return "band";
    if (!irreducible) return "irreducibility";
    return std::nullopt;
  }
};

namespace detail {

inline bool idempotent_family_ok(const Matrix& a, const std::vector<Matrix>& family,
                                 const std::vector<Rational>& eigenvalues, const char* label,
                                 std::vector<std::string>& issues) {
  const std::size_t n = a.rows();
  const Matrix id = Matrix::identity(n);
  bool ok = true;
  auto fail = [&](const std::string& what) {
    issues.push_back(std::string(label) + ": " + what);
    ok = false;
  };
  Matrix total(n, n);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Matrix& e = family[i];
    total += e;
    if (e.is_zero()) fail("idempotent " + std::to_string(i) + " is zero");
    if (a * e != eigenvalues[i] * e || e * a != eigenvalues[i] * e) {
      fail("idempotent " + std::to_string(i) + " does not commute with the eigenvalue relation");
    }
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Matrix prod = e * family[j];
      if ((i == j && prod != e) || (i != j && !prod.is_zero())) {
        fail("E_" + std::to_string(i) + " E_" + std::to_string(j) + " violates orthogonality");
      }
    }
  }
  if (total != id) fail("idempotents do not sum to I");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    for (std::size_t j = i + 1; j < eigenvalues.size(); ++j) {
      if (eigenvalues[i] == eigenvalues[j]) fail("repeated eigenvalue " + eigenvalues[i].str());
    }
  }
  return ok;
}

inline bool band_ok(const std::vector<Matrix>& family, const Matrix& other) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = 0; j < family.size(); ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      if (gap > 1 && !(family[i] * other * family[j]).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Checks every tridiagonal-system and mock-system axiom exactly. Malformed
/// input is reported through `issues`, never thrown.
inline AxiomReport verify_system(const ParallelSystem& ps) {
  AxiomReport report;
  const std::size_t n = ps.A.rows();
  const std::size_t len = ps.theta.size();
  auto shape_ok = [&](const Matrix& m) { return m.rows() == n && m.cols() == n; };
  bool shapes = n > 0 && shape_ok(ps.A) && shape_ok(ps.A_star) && len > 0 && ps.theta_star.size() == len &&
                ps.E.size() == len && ps.E_star.size() == len;
  if (shapes) {
    shapes = std::all_of(ps.E.begin(), ps.E.end(), shape_ok) && std::all_of(ps.E_star.begin(), ps.E_star.end(), shape_ok);
  }
  if (!shapes) {
    report.issues.emplace_back("dimensionally inconsistent system");
    return report;
  }

  const bool family = detail::idempotent_family_ok(ps.A, ps.E, ps.theta, "E", report.issues);
  const bool family_star = detail::idempotent_family_ok(ps.A_star, ps.E_star, ps.theta_star, "E*", report.issues);
  report.is_parallel = family && family_star;

  report.td_band_ok = detail::band_ok(ps.E, ps.A_star) && detail::band_ok(ps.E_star, ps.A);
  if (!report.td_band_ok) report.issues.emplace_back("band condition violated");

  report.algebra_dim = generated_algebra_dim({ps.A, ps.A_star});
  report.irreducible = report.algebra_dim == n * n;
  if (!report.irreducible) {
    report.witness = invariant_subspace_witness(ps.A, ps.A_star);
    report.issues.emplace_back("reducible: generated algebra has dimension " + std::to_string(report.algebra_dim));
  }

  const Matrix& es0 = ps.E_star.front();
  report.mock_corners_ok = !(es0 * ps.E.front() * es0).is_zero() && !(es0 * ps.E.back() * es0).is_zero();
  report.is_sharp = rank(es0) == 1;

  try {
    const auto [r1, r2] = qserre_residuals(ps.A, ps.A_star, ps.ctx);
    report.qserre_ok = r1.is_zero() && r2.is_zero();
  } catch (const Error& e) {
    report.issues.emplace_back(e.what());
  }

  report.is_td_system = report.is_parallel && report.td_band_ok && report.irreducible;
  report.is_mock_td_system = report.is_parallel && report.td_band_ok && report.mock_corners_ok;
  return report;
}

/// The four relatives: identity, E reversed, E* reversed, both reversed.
inline std::array<ParallelSystem, 4> relatives(const ParallelSystem& ps) {
  auto reverse_e = [](ParallelSystem s) {
    std::reverse(s.E.begin(), s.E.end());
    std::reverse(s.theta.begin(), s.theta.end());
    return s;
  };
  auto reverse_e_star = [](ParallelSystem s) {
    std::reverse(s.E_star.begin(), s.E_star.end());
    std::reverse(s.theta_star.begin(), s.theta_star.end());
    return s;
  };
  return {ps, reverse_e(ps), reverse_e_star(ps), reverse_e_star(reverse_e(ps))};
}

}  // namespace tdpert

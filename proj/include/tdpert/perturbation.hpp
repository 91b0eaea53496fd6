#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tdpert/drinfeld.hpp"
#include "tdpert/parallel_system.hpp"
#include "tdpert/split_decomposition.hpp"
#include "tdpert/split_sequence.hpp"

namespace tdpert {

/// The map acting on the split summand U_i as q^{d-2i}.
///
/// Requires the normalized spectra θ_i = q^{2i-d}, θ*_i = q^{d-2i} and a
/// decomposition U of V.
inline Matrix k_map(const ParallelSystem& ps, const std::vector<Subspace>& u) {
  if (!has_geometric_spectra(ps)) {
    throw PreconditionError("k_map: spectra must be theta_i = q^(2i-d), theta*_i = q^(d-2i); normalize the system first");
  }
  const std::size_t n = ps.dim();
  if (u.size() != ps.theta.size() || !detail::is_decomposition(u, n)) {
    throw PreconditionError("k_map: U is not a decomposition of V");
  }
  Matrix basis(n, 0);
  std::vector<Rational> diag;
  for (std::size_t i = 0; i < u.size(); ++i) {
    basis = hstack(basis, u[i].basis());
    for (std::size_t j = 0; j < u[i].dim(); ++j) diag.push_back(ps.theta_star[i]);
  }
  return basis * Matrix::diagonal(diag) * inverse(basis);
}

/// (qKA - q^-1 AK)/(q - q^-1) = I and (qK^-1 A* - q^-1 A* K^-1)/(q - q^-1) = I.
inline bool verify_k_relations(const Matrix& k, const Matrix& a, const Matrix& a_star, const QContext& ctx) {
  require_square(k, "verify_k_relations");
  if (k.rows() != a.rows() || k.rows() != a_star.rows()) throw ShapeError("verify_k_relations: shape mismatch");
  if (determinant(k).is_zero()) throw PreconditionError("verify_k_relations: K is singular");
  const Matrix k_inv = inverse(k);
  const Rational& q = ctx.q;
  const Rational q_inv = q.inverse();
  const Rational denom = ctx.q_minus_inverse().inverse();
  const Matrix id = Matrix::identity(k.rows());
  const Matrix first = (q * (k * a) - q_inv * (a * k)) * denom;
  const Matrix second = (q * (k_inv * a_star) - q_inv * (a_star * k_inv)) * denom;
  return first == id && second == id;
}

/// The t-linear perturbation: B = A, B* = t A* + (1 - t) K, and the
/// primitive idempotents E'_i of B* for the eigenvalues θ*_i.
struct PerturbedSystem {
  Rational t;
  Matrix K;
  Matrix B;
  Matrix B_star;
  std::vector<Matrix> E_prime;
  ParallelSystem base;
  std::vector<Subspace> U;

  /// (B; {E_i}; B*; {E'_i}) with the orderings inherited from the base.
  [[nodiscard]] ParallelSystem system() const {
    ParallelSystem ps;
    ps.ctx = base.ctx;
    ps.A = B;
    ps.A_star = B_star;
    ps.E = base.E;
    ps.E_star = E_prime;
    ps.theta = base.theta;
    ps.theta_star = base.theta_star;
    return ps;
  }
};

/// Forms the t-linear perturbation of a tridiagonal system with normalized
/// spectra. Throws StructuralError if B* is not annihilated by
/// prod (x - θ*_i), if some eigenspace of B* has the wrong dimension, or if
/// U_0 differs from E'_0 V.
inline PerturbedSystem perturb(const ParallelSystem& ps, const Rational& t) {
  PerturbedSystem pert;
  pert.t = t;
  pert.base = ps;
  pert.U = split_decomposition(ps);
  pert.K = k_map(ps, pert.U);
  pert.B = ps.A;
  pert.B_star = t * ps.A_star + (Rational(1) - t) * pert.K;
  try {
    pert.E_prime = primitive_idempotents(pert.B_star, ps.theta_star);
  } catch (const PreconditionError& e) {
    throw StructuralError(std::string("perturb: B* is not diagonalizable with eigenvalues theta*: ") + e.what());
  }
  for (std::size_t i = 0; i < pert.U.size(); ++i) {
    if (rank(pert.E_prime[i]) != pert.U[i].dim()) {
      throw StructuralError("perturb: eigenspace " + std::to_string(i) + " of B* has the wrong dimension");
    }
  }
  if (image(pert.E_prime.front()) != pert.U.front()) throw StructuralError("perturb: U_0 != E'_0 V");
  return pert;
}

/// One flag per structural fact about the perturbation.
struct PerturbationReport {
  bool scales_on_split = false;  ///< B* - θ*_i = t (A* - θ*_i) on U_i
  bool lowers_split = false;  ///< (B* - θ*_i) U_i ⊆ U_{i-1}
  bool ladder_scales = false; ///< (B* - θ*_1)...(B* - θ*_i) = t^i (A* - θ*_1)...(A* - θ*_i) on U_i
  bool ladder_reaches_bottom = false;///< (B* - θ*_1)...(B* - θ*_i) U_i ⊆ U_0
  bool multiplicities = false;    ///< prod (B* - θ*_i) = 0 and rank E'_i = dim U_i
  bool bottom_is_eigenspace = false;   ///< U_0 = E'_0 V
  bool q_serre = false;    ///< (B, B*) satisfy both q-Serre relations
  bool b_star_banded = false;///< B* E_i V ⊆ E_{i-1} V + E_i V + E_{i+1} V
  bool b_banded = false;///< B E'_i V ⊆ E'_{i-1} V + E'_i V + E'_{i+1} V

  [[nodiscard]] bool all() const {
    return scales_on_split && lowers_split && ladder_scales && ladder_reaches_bottom && multiplicities && bottom_is_eigenspace && q_serre && b_star_banded && b_banded;
  }
};

namespace detail {

inline bool neighbour_inclusions(const Matrix& map, const std::vector<Matrix>& family, std::size_t n) {
  const auto d = static_cast<std::ptrdiff_t>(family.size()) - 1;
  for (std::ptrdiff_t i = 0; i <= d; ++i) {
    const Subspace target = eigenspace_sum(family, n, i - 1, i + 1);
    if (!maps_into(map, image(family[static_cast<std::size_t>(i)]), target)) return false;
  }
  return true;
}

}  // namespace detail

inline PerturbationReport verify_perturbation_structure(const PerturbedSystem& pert) {
  PerturbationReport r;
  const ParallelSystem& ps = pert.base;
  const std::size_t n = ps.dim();
  const std::size_t len = ps.theta_star.size();
  const Matrix id = Matrix::identity(n);
  const Subspace zero = Subspace::zero(n);

  std::vector<Matrix> b_shift;
  std::vector<Matrix> a_shift;
  for (const auto& ts : ps.theta_star) {
    b_shift.push_back(pert.B_star - ts * id);
    a_shift.push_back(ps.A_star - ts * id);
  }

  r.scales_on_split = r.lowers_split = r.ladder_scales = r.ladder_reaches_bottom = true;
  for (std::size_t i = 0; i < len; ++i) {
    const Subspace& ui = pert.U[i];
    const Subspace& below = i == 0 ? zero : pert.U[i - 1];
    Matrix b_ladder = id;
    Matrix a_ladder = id;
    for (std::size_t k = 1; k <= i; ++k) {
      b_ladder = b_ladder * b_shift[k];
      a_ladder = a_ladder * a_shift[k];
    }
    const Rational t_pow = pert.t.pow(static_cast<long>(i));
    for (std::size_t j = 0; j < ui.dim(); ++j) {
      const Vector v = ui.basis_vector(j);
      Vector scaled = a_shift[i] * v;
      for (auto& x : scaled) x *= pert.t;
      if (b_shift[i] * v != scaled) r.scales_on_split = false;
      Vector ladder_scaled = a_ladder * v;
      for (auto& x : ladder_scaled) x *= t_pow;
      if (b_ladder * v != ladder_scaled) r.ladder_scales = false;
    }
    if (!maps_into(b_shift[i], ui, below)) r.lowers_split = false;
    if (!maps_into(b_ladder, ui, pert.U.front())) r.ladder_reaches_bottom = false;
  }

  Matrix annihilator = id;
  for (const auto& s : b_shift) annihilator = annihilator * s;
  r.multiplicities = annihilator.is_zero() && pert.E_prime.size() == len;
  for (std::size_t i = 0; r.multiplicities && i < len; ++i) r.multiplicities = rank(pert.E_prime[i]) == pert.U[i].dim();

  r.bottom_is_eigenspace = !pert.E_prime.empty() && image(pert.E_prime.front()) == pert.U.front();

  const auto [r1, r2] = qserre_residuals(pert.B, pert.B_star, ps.ctx);
  r.q_serre = r1.is_zero() && r2.is_zero();

  r.b_star_banded = detail::neighbour_inclusions(pert.B_star, ps.E, n);
  r.b_banded = pert.E_prime.size() == len && detail::neighbour_inclusions(pert.B, pert.E_prime, n);
  return r;
}

/// ζ'_i recomputed by the trace formula on the perturbed system; throws
/// StructuralError unless ζ'_i = t^i ζ_i.
inline std::vector<Rational> perturbed_split_sequence(const PerturbedSystem& pert) {
  const auto zeta = split_sequence(pert.base);
  const auto zeta_prime = split_sequence(pert.system());
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    if (zeta_prime[i] != pert.t.pow(static_cast<long>(i)) * zeta[i]) {
      throw StructuralError("perturbed_split_sequence: zeta'_" + std::to_string(i) + " != t^i zeta_i");
    }
  }
  return zeta_prime;
}

/// Predicted and observed tridiagonal-pair status of the t-linear perturbation.
struct TheoremVerdict {
  Rational t;
  bool predicted = false;
  bool actual = false;
  std::optional<std::string> failing_axiom;
  std::optional<Subspace> witness;
};

/// Throws TheoremMismatch when the Drinfel'd prediction and the direct axiom
/// check disagree. The theorem is stated for d >= 1; at d = 0 every pair is
/// irreducible and t = 0 would be a spurious mismatch.
inline TheoremVerdict theorem_verdict(const ParallelSystem& ps, const Rational& t) {
  if (ps.diameter() < 1) throw PreconditionError("theorem_verdict: requires diameter d >= 1");
  const DrinfeldPolynomial p = drinfeld_poly(split_sequence(ps), QContext(ps.ctx.q, ps.diameter()));
  const PerturbedSystem pert = perturb(ps, t);
  const AxiomReport report = verify_system(pert.system());
  TheoremVerdict v;
  v.t = t;
  v.predicted = predict_td(p, t);
  v.actual = report.is_td_system;
  v.failing_axiom = report.failing_axiom();
  v.witness = report.witness;
  if (v.predicted != v.actual) {
    throw TheoremMismatch("theorem mismatch at t = " + t.str() + ": predicted " + (v.predicted ? "true" : "false") +
                          ", observed " + (v.actual ? "true" : "false"));
  }
  return v;
}

/// Theorem verdicts for each distinct t, ordered by t.
inline std::vector<TheoremVerdict> theorem_scan(const ParallelSystem& ps, std::vector<Rational> ts) {
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<TheoremVerdict> rows;
  rows.reserve(ts.size());
  for (const auto& t : ts) rows.push_back(theorem_verdict(ps, t));
  return rows;
}

}  // namespace tdpert

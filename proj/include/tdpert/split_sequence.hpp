#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tdpert/parallel_system.hpp"

namespace tdpert {

inline void require_sharp(const ParallelSystem& ps, const char* what) {
  if (ps.E_star.empty() || rank(ps.E_star.front()) != 1) {
    throw NotSharpError(std::string(what) + ": system is not sharp (rank E*_0 != 1)");
  }
}

/// χ_i = tr(τ_i(A) E*_0).
inline Rational chi(const ParallelSystem& ps, int i) {
  require_sharp(ps, "chi");
  if (i < 0 || i > ps.diameter()) throw PreconditionError("chi: index out of range");
  return trace(mat_poly_eval(tau_poly(ps.theta, i), ps.A) * ps.E_star.front());
}

/// ζ_i = (θ*_0 - θ*_1) ... (θ*_0 - θ*_i) χ_i.
inline std::vector<Rational> split_sequence(const ParallelSystem& ps) {
  require_sharp(ps, "split_sequence");
  std::vector<Rational> zeta;
  Rational scale(1);
  for (int i = 0; i <= ps.diameter(); ++i) {
    if (i > 0) scale *= ps.theta_star[0] - ps.theta_star[static_cast<std::size_t>(i)];
    zeta.push_back(scale * chi(ps, i));
  }
  return zeta;
}

inline ParameterArray parameter_array(const ParallelSystem& ps) {
  return {ps.diameter(), ps.theta, ps.theta_star, split_sequence(ps)};
}

struct TraceReport {
  bool top_trace_formula = false;  ///< ζ_d = η*_d(θ*_0) τ_d(θ_d) tr(E_d E*_0)
  bool weighted_trace_formula = false;  ///< Σ η_{d-i}(θ_0) η*_{d-i}(θ*_0) ζ_i = η*_d(θ*_0) η_d(θ_0) tr(E_0 E*_0)
  bool top_trace_nonzero = false;   ///< tr(E_d E*_0) != 0
  bool bottom_trace_nonzero = false;   ///< tr(E_0 E*_0) != 0
  bool top_zeta_nonzero = false;   ///< ζ_d != 0
  bool weighted_sum_nonzero = false;   ///< the weighted_trace_formula sum is nonzero
  Rational weighted_sum;

  [[nodiscard]] bool all() const { return top_trace_formula && weighted_trace_formula && top_trace_nonzero && bottom_trace_nonzero && top_zeta_nonzero && weighted_sum_nonzero; }
};

inline TraceReport trace_identities(const ParallelSystem& ps) {
  require_sharp(ps, "trace_identities");
  const auto d = static_cast<std::size_t>(ps.diameter());
  const EtaTau p = eta_tau_polys(ps.theta, ps.theta_star);
  const auto zeta = split_sequence(ps);
  const Rational& th0 = ps.theta[0];
  const Rational& ths0 = ps.theta_star[0];

  const Rational tr_d = trace(ps.E[d] * ps.E_star[0]);
  const Rational tr_0 = trace(ps.E[0] * ps.E_star[0]);

  TraceReport r;
  r.top_trace_formula = zeta[d] == poly_eval(p.eta_star[d], ths0) * poly_eval(p.tau[d], ps.theta[d]) * tr_d;
  for (std::size_t i = 0; i <= d; ++i) {
    r.weighted_sum += poly_eval(p.eta[d - i], th0) * poly_eval(p.eta_star[d - i], ths0) * zeta[i];
  }
  r.weighted_trace_formula = r.weighted_sum == poly_eval(p.eta_star[d], ths0) * poly_eval(p.eta[d], th0) * tr_0;
  r.top_trace_nonzero = !tr_d.is_zero();
  r.bottom_trace_nonzero = !tr_0.is_zero();
  r.top_zeta_nonzero = !zeta[d].is_zero();
  r.weighted_sum_nonzero = !r.weighted_sum.is_zero();
  return r;
}

/// θ_i = q^{2i-d}, θ*_i = q^{d-2i}.
inline std::pair<std::vector<Rational>, std::vector<Rational>> geometric_eigenvalues(const QContext& ctx) {
  std::vector<Rational> theta;
  std::vector<Rational> theta_star;
  for (int i = 0; i <= ctx.d; ++i) {
    theta.push_back(ctx.q.pow(2 * i - ctx.d));
    theta_star.push_back(ctx.q.pow(ctx.d - 2 * i));
  }
  return {theta, theta_star};
}

inline bool has_geometric_spectra(const ParallelSystem& ps) {
  const auto [theta, theta_star] = geometric_eigenvalues(QContext(ps.ctx.q, ps.diameter()));
  return ps.theta == theta && ps.theta_star == theta_star;
}

/// θ_i = q^{2i} θ_0 and θ*_{d-i} = q^{2i} θ*_d for all i.
inline bool is_qserre_spectrum(const ParameterArray& pa, const QContext& ctx) {
  const auto d = static_cast<std::size_t>(pa.d);
  if (pa.theta.size() != d + 1 || pa.theta_star.size() != d + 1) return false;
  for (std::size_t i = 0; i <= d; ++i) {
    const Rational ratio = ctx.q.pow(2 * static_cast<long>(i));
    if (pa.theta[i] != ratio * pa.theta[0]) return false;
    if (pa.theta_star[d - i] != ratio * pa.theta_star[d]) return false;
  }
  return true;
}

/// Candidate system in the split basis: A lower bidiagonal with diagonal θ
/// and unit subdiagonal, A* upper bidiagonal with diagonal θ* and
/// superdiagonal φ_i = ζ_i / ζ_{i-1}. Not necessarily a tridiagonal system
/// for d >= 2; run verify_system on the result.
inline ParallelSystem from_parameter_array_thin(const ParameterArray& pa, const QContext& ctx) {
  pa.validate();
  for (std::size_t i = 1; i < pa.zeta.size(); ++i) {
    if (pa.zeta[i].is_zero()) throw PreconditionError("thin construction requires zeta_i != 0 (zeta_" + std::to_string(i) + " = 0)");
  }
  const auto n = static_cast<std::size_t>(pa.d + 1);
  Matrix a(n, n);
  Matrix a_star(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = pa.theta[i];
    a_star(i, i) = pa.theta_star[i];
    if (i + 1 < n) {
      a(i + 1, i) = Rational(1);
      a_star(i, i + 1) = pa.zeta[i + 1] / pa.zeta[i];
    }
  }
  return assemble_system(ctx.q, std::move(a), std::move(a_star), pa.theta, pa.theta_star);
}

/// Searches for an invertible S with S A1 = A2 S and S A1* = A2* S.
///
/// The intertwiners form the kernel of a linear system in the n^2 entries of
/// S. Basis vectors of that kernel are tried first, then combinations with
/// coefficients in [-2, 2]; the first invertible one is returned. Systems
/// with different eigenvalue orderings are never isomorphic.
inline std::optional<Matrix> find_isomorphism(const ParallelSystem& ps1, const ParallelSystem& ps2) {
  const std::size_t n = ps1.dim();
  if (n != ps2.dim()) throw ShapeError("find_isomorphism: dimension mismatch");
  if (ps1.theta != ps2.theta || ps1.theta_star != ps2.theta_star) return std::nullopt;

  // row (k, i, j) of the system encodes (S X1 - X2 S)_{ij} = 0 for X in {A, A*}
  Matrix system(2 * n * n, n * n);
  const std::pair<const Matrix*, const Matrix*> pairs[] = {{&ps1.A, &ps2.A}, {&ps1.A_star, &ps2.A_star}};
  std::size_t row = 0;
  for (const auto& [x1, x2] : pairs) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j, ++row) {
        for (std::size_t k = 0; k < n; ++k) {
          system(row, i * n + k) += (*x1)(k, j);
          system(row, k * n + j) -= (*x2)(i, k);
        }
      }
    }
  }
  const Matrix kernel = kernel_basis(system);
  const std::size_t k = kernel.cols();
  if (k == 0) return std::nullopt;

  auto to_matrix = [&](const Vector& v) {
    Matrix s(n, n);
    for (std::size_t i = 0; i < n * n; ++i) s(i / n, i % n) = v[i];
    return s;
  };
  auto combine = [&](const std::vector<int>& coeffs) {
    Vector v(n * n);
    for (std::size_t c = 0; c < k; ++c) {
      if (coeffs[c] == 0) continue;
      for (std::size_t i = 0; i < n * n; ++i) v[i] += Rational(coeffs[c]) * kernel(i, c);
    }
    return to_matrix(v);
  };

  for (std::size_t c = 0; c < k; ++c) {
    Matrix s = to_matrix(kernel.col(c));
    if (!determinant(s).is_zero()) return s;
  }
  constexpr std::size_t kBudget = 50000;
  std::vector<int> coeffs(k, -2);
  for (std::size_t tried = 0; tried < kBudget; ++tried) {
    Matrix s = combine(coeffs);
    if (!determinant(s).is_zero()) return s;
    std::size_t pos = 0;
    while (pos < k && ++coeffs[pos] > 2) coeffs[pos++] = -2;
    if (pos == k) break;
  }
  return std::nullopt;
}

/// Rescales a system whose spectra are c q^{2i-d} and c* q^{d-2i} (for some
/// relative) to the normalized spectra q^{2i-d} and q^{d-2i}.
inline std::optional<ParallelSystem> normalize_geometric(const ParallelSystem& ps) {
  const int d = ps.diameter();
  const QContext ctx(ps.ctx.q, d);
  const auto [theta, theta_star] = geometric_eigenvalues(ctx);
  for (ParallelSystem candidate : relatives(ps)) {
    const Rational c = candidate.theta[0] / theta[0];
    const Rational c_star = candidate.theta_star[0] / theta_star[0];
    if (c.is_zero() || c_star.is_zero()) continue;
    bool matches = true;
    for (std::size_t i = 0; i < theta.size() && matches; ++i) {
      matches = candidate.theta[i] == c * theta[i] && candidate.theta_star[i] == c_star * theta_star[i];
    }
    if (!matches) continue;
    candidate.A *= c.inverse();
    candidate.A_star *= c_star.inverse();
    candidate.theta = theta;
    candidate.theta_star = theta_star;
    candidate.ctx = ctx;
    return candidate;
  }
  return std::nullopt;
}

}  // namespace tdpert

#pragma once

#include <vector>

#include "tdpert/parallel_system.hpp"
#include "tdpert/split_sequence.hpp"

namespace tdpert {

namespace detail {

/// E_lo V + ... + E_hi V (zero subspace when lo > hi).
inline Subspace eigenspace_sum(const std::vector<Matrix>& family, std::size_t n, std::ptrdiff_t lo, std::ptrdiff_t hi) {
  Subspace s = Subspace::zero(n);
  for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(lo, 0); i <= hi && i < static_cast<std::ptrdiff_t>(family.size()); ++i) {
    s = subspace_sum(s, image(family[static_cast<std::size_t>(i)]));
  }
  return s;
}

inline bool is_decomposition(const std::vector<Subspace>& u, std::size_t n) {
  std::size_t total = 0;
  Subspace sum = Subspace::zero(n);
  for (const auto& ui : u) {
    if (ui.ambient_dim() != n || ui.is_zero()) return false;
    total += ui.dim();
    sum = subspace_sum(sum, ui);
  }
  return total == n && sum.is_full();
}

}  // namespace detail

/// U_i = (E*_0 V + ... + E*_i V) ∩ (E_i V + ... + E_d V).
///
/// Throws StructuralError when the subspaces do not form a direct-sum
/// decomposition of V (the system is then not a tridiagonal system).
inline std::vector<Subspace> split_decomposition(const ParallelSystem& ps) {
  const std::size_t n = ps.dim();
  const auto d = static_cast<std::ptrdiff_t>(ps.diameter());
  std::vector<Subspace> u;
  for (std::ptrdiff_t i = 0; i <= d; ++i) {
    u.push_back(subspace_intersect(detail::eigenspace_sum(ps.E_star, n, 0, i), detail::eigenspace_sum(ps.E, n, i, d)));
  }
  if (!detail::is_decomposition(u, n)) {
    throw StructuralError("split_decomposition: the subspaces U_i do not decompose V");
  }
  return u;
}

/// Checks the two split inclusions (A - θ_i)U_i ⊆ U_{i+1}, (A* - θ*_i)U_i ⊆ U_{i-1}
/// and the partial-sum equalities U_i + ... + U_d = E_i V + ... + E_d V,
/// U_0 + ... + U_i = E*_0 V + ... + E*_i V.
inline bool verify_split(const ParallelSystem& ps, const std::vector<Subspace>& u) {
  const std::size_t n = ps.dim();
  for (const auto& ui : u) {
    if (ui.ambient_dim() != n) throw ShapeError("verify_split: ambient mismatch");
  }
  const auto d = static_cast<std::ptrdiff_t>(ps.diameter());
  if (static_cast<std::ptrdiff_t>(u.size()) != d + 1 || !detail::is_decomposition(u, n)) return false;

  const Matrix id = Matrix::identity(n);
  const Subspace zero = Subspace::zero(n);
  auto at = [&](std::ptrdiff_t i) -> const Subspace& {
    return (i < 0 || i > d) ? zero : u[static_cast<std::size_t>(i)];
  };
  for (std::ptrdiff_t i = 0; i <= d; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!maps_into(ps.A - ps.theta[k] * id, u[k], at(i + 1))) return false;
    if (!maps_into(ps.A_star - ps.theta_star[k] * id, u[k], at(i - 1))) return false;
  }
  for (std::ptrdiff_t i = 0; i <= d; ++i) {
    Subspace tail = zero;
    for (std::ptrdiff_t j = i; j <= d; ++j) tail = subspace_sum(tail, at(j));
    if (tail != detail::eigenspace_sum(ps.E, n, i, d)) return false;
    Subspace head = zero;
    for (std::ptrdiff_t j = 0; j <= i; ++j) head = subspace_sum(head, at(j));
    if (head != detail::eigenspace_sum(ps.E_star, n, 0, i)) return false;
  }
  return true;
}

/// Scalar by which (A* - θ*_1)...(A* - θ*_i)(A - θ_{i-1})...(A - θ_0) acts on
/// the one-dimensional U_0.
inline Rational ladder_eigenvalue(const ParallelSystem& ps, const std::vector<Subspace>& u, int i) {
  if (u.empty() || u.front().dim() != 1) throw PreconditionError("ladder_eigenvalue: dim U_0 must be 1");
  if (i < 0 || i > ps.diameter()) throw PreconditionError("ladder_eigenvalue: index out of range");
  const std::size_t n = ps.dim();
  const Matrix id = Matrix::identity(n);
  const Vector u0 = u.front().basis_vector(0);
  Vector v = u0;
  for (int k = 0; k < i; ++k) v = (ps.A - ps.theta[static_cast<std::size_t>(k)] * id) * v;
  for (int k = i; k >= 1; --k) v = (ps.A_star - ps.theta_star[static_cast<std::size_t>(k)] * id) * v;

  // u0 is canonical, so its first nonzero entry is the pivot 1
  std::size_t p = 0;
  while (u0[p].is_zero()) ++p;
  const Rational scalar = v[p] / u0[p];
  for (std::size_t r = 0; r < n; ++r) {
    if (v[r] != scalar * u0[r]) throw StructuralError("ladder_eigenvalue: ladder map does not act on U_0 as a scalar");
  }
  return scalar;
}

}  // namespace tdpert

#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "tdpert/matrix.hpp"

namespace tdpert {

/// Incrementally maintained linearly independent set. Each stored vector is
/// normalized to 1 at its pivot and is zero at the pivots stored before it,
/// so reducing a new vector in insertion order clears every pivot.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t length) : length_(length) {}

  /// Adds v to the span. Returns true iff v was independent of the span.
  bool insert(Vector v) {
    if (v.size() != length_) throw ShapeError("SpanBuilder: vector length mismatch");
    reduce(v);
    std::size_t p = 0;
    while (p < length_ && v[p].is_zero()) ++p;
    if (p == length_) return false;
    const Rational inv = v[p].inverse();
    for (std::size_t k = p; k < length_; ++k) v[k] *= inv;
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  [[nodiscard]] bool contains(Vector v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
  }

  [[nodiscard]] std::size_t dim() const { return rows_.size(); }
  [[nodiscard]] std::size_t length() const { return length_; }
  [[nodiscard]] const std::vector<Vector>& vectors() const { return rows_; }

 private:
  void reduce(Vector& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rational f = v[pivots_[k]];
      if (f.is_zero()) continue;
      const Vector& r = rows_[k];
      for (std::size_t j = pivots_[k]; j < length_; ++j) {
        if (!r[j].is_zero()) v[j] -= f * r[j];
      }
    }
  }

  std::size_t length_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// A linear subspace of Q^n stored by a canonical basis.
///
/// The basis is in column-reduced echelon form: each column has a pivot row
/// holding 1, pivot rows strictly increase from left to right, and every
/// other column is zero in that row. The representation is unique, so
/// subspace equality is value equality. The zero subspace has no columns.
class Subspace {
 public:
  Subspace() = default;

  /// Column space of the given matrix.
  static Subspace span(const Matrix& columns) {
    Subspace s;
    s.ambient_ = columns.rows();
    const auto [r, pivots] = rref(columns.transpose());
    s.basis_ = Matrix(s.ambient_, pivots.size());
    for (std::size_t j = 0; j < pivots.size(); ++j) {
      for (std::size_t i = 0; i < s.ambient_; ++i) s.basis_(i, j) = r(j, i);
    }
    s.pivots_ = pivots;
    return s;
  }
  static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors) {
    return span(Matrix::from_columns(ambient, vectors));
  }
  static Subspace zero(std::size_t ambient) { return span(Matrix(ambient, 0)); }
  static Subspace full(std::size_t ambient) { return span(Matrix::identity(ambient)); }

  [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return basis_.cols(); }
  [[nodiscard]] bool is_zero() const { return dim() == 0; }
  [[nodiscard]] bool is_full() const { return dim() == ambient_; }
  [[nodiscard]] const Matrix& basis() const { return basis_; }
  [[nodiscard]] Vector basis_vector(std::size_t j) const { return basis_.col(j); }

  [[nodiscard]] bool contains(const Vector& v) const {
    if (v.size() != ambient_) throw ShapeError("Subspace::contains: ambient mismatch");
    // the only candidate combination is fixed by the pivot coordinates
    for (std::size_t i = 0; i < ambient_; ++i) {
      Rational expected(0);
      for (std::size_t j = 0; j < pivots_.size(); ++j) {
        const Rational& c = v[pivots_[j]];
        if (!c.is_zero() && !basis_(i, j).is_zero()) expected += c * basis_(i, j);
      }
      if (expected != v[i]) return false;
    }
    return true;
  }

  [[nodiscard]] bool contains(const Subspace& other) const {
    require_same_ambient(other);
    for (std::size_t j = 0; j < other.dim(); ++j) {
      if (!contains(other.basis_vector(j))) return false;
    }
    return true;
  }

  void require_same_ambient(const Subspace& other) const {
    if (ambient_ != other.ambient_) throw ShapeError("subspaces live in different ambient spaces");
  }

  friend bool operator==(const Subspace& a, const Subspace& b) = default;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

/// Image (column space) of a linear map.
inline Subspace image(const Matrix& m) { return Subspace::span(m); }

inline Subspace subspace_sum(const Subspace& s, const Subspace& t) {
  s.require_same_ambient(t);
  return Subspace::span(hstack(s.basis(), t.basis()));
}

/// S ∩ T from the kernel of [S | -T]: each kernel vector (x, y) gives S x = T y.
inline Subspace subspace_intersect(const Subspace& s, const Subspace& t) {
  s.require_same_ambient(t);
  const Matrix stacked = hstack(s.basis(), -t.basis());
  const Matrix kernel = kernel_basis(stacked);
  Matrix x(s.dim(), kernel.cols());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < kernel.cols(); ++j) x(i, j) = kernel(i, j);
  }
  return Subspace::span(s.basis() * x);
}

/// True iff M s ∈ T for every basis vector s of S.
inline bool maps_into(const Matrix& m, const Subspace& s, const Subspace& t) {
  if (m.cols() != s.ambient_dim() || m.rows() != t.ambient_dim()) {
    throw ShapeError("maps_into: map " + m.shape() + " incompatible with subspaces");
  }
  for (std::size_t j = 0; j < s.dim(); ++j) {
    if (!t.contains(m * s.basis_vector(j))) return false;
  }
  return true;
}

namespace detail {

inline Vector flatten(const Matrix& m) { return m.entries(); }

inline std::size_t common_square_size(const std::vector<Matrix>& gens, const char* what) {
  if (gens.empty()) throw PreconditionError(std::string(what) + ": no generators");
  const std::size_t n = gens.front().rows();
  for (const auto& g : gens) {
    if (!g.is_square() || g.rows() != n) throw ShapeError(std::string(what) + ": generators must be square of equal size");
  }
  return n;
}

/// Smallest subspace containing v and invariant under every generator.
inline Subspace invariant_closure(const Vector& v, const std::vector<Matrix>& gens) {
  const std::size_t n = v.size();
  SpanBuilder span(n);
  std::deque<Vector> pending;
  if (span.insert(v)) pending.push_back(v);
  while (!pending.empty()) {
    const Vector w = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : gens) {
      Vector image = g * w;
      if (span.insert(image)) pending.push_back(std::move(image));
    }
  }
  return Subspace::span(n, span.vectors());
}

}  // namespace detail

/// Dimension of the unital algebra generated by the given square matrices:
/// starting from I, products G·X of a generator with an already spanned word
/// are added until the span stops growing.
inline std::size_t generated_algebra_dim(const std::vector<Matrix>& gens) {
  const std::size_t n = detail::common_square_size(gens, "generated_algebra_dim");
  SpanBuilder span(n * n);
  std::deque<Matrix> pending;
  const Matrix id = Matrix::identity(n);
  span.insert(detail::flatten(id));
  pending.push_back(id);
  while (!pending.empty()) {
    const Matrix word = std::move(pending.front());
    pending.pop_front();
    for (const auto& g : gens) {
      Matrix next = g * word;
      if (span.insert(detail::flatten(next))) pending.push_back(std::move(next));
    }
    if (span.dim() == n * n) break;
  }
  return span.dim();
}

namespace detail {

/// Candidate seed vectors: eigenvectors of each map for its rational
/// eigenvalues (largest eigenvalue first), followed by small integer
/// combinations inside each eigenspace.
inline std::vector<Vector> eigen_seeds(const std::vector<Matrix>& maps) {
  std::vector<Vector> seeds;
  for (const auto& m : maps) {
    auto eigenvalues = rational_eigenvalues(m);
    std::reverse(eigenvalues.begin(), eigenvalues.end());
    for (const auto& lambda : eigenvalues) {
      const Matrix eigenspace = kernel_basis(m - lambda * Matrix::identity(m.rows()));
      for (std::size_t j = 0; j < eigenspace.cols(); ++j) seeds.push_back(eigenspace.col(j));
      const std::size_t k = eigenspace.cols();
      if (k < 2 || k > 4) continue;
      std::vector<int> coeffs(k, -2);
      const auto advance = [&] {
        for (std::size_t i = 0; i < k; ++i) {
          if (++coeffs[i] <= 2) return true;
          coeffs[i] = -2;
        }
        return false;
      };
      do {
        const auto nonzero = std::count_if(coeffs.begin(), coeffs.end(), [](int c) { return c != 0; });
        if (nonzero < 2) continue;
        Vector v(m.rows());
        for (std::size_t i = 0; i < k; ++i) {
          for (std::size_t r = 0; r < m.rows(); ++r) v[r] += Rational(coeffs[i]) * eigenspace(r, i);
        }
        seeds.push_back(std::move(v));
      } while (advance());
    }
  }
  return seeds;
}

}  // namespace detail

/// Best-effort search for a common invariant subspace 0 != W != V of A and B
/// over the rationals. Grows the joint invariant closure of rational
/// eigenvectors of A, then of B; failing that, does the same for the
/// transposes and returns the annihilator of a proper closure. May return
/// nothing for pairs that are reducible only over an extension field.
inline std::optional<Subspace> invariant_subspace_witness(const Matrix& a, const Matrix& b) {
  detail::common_square_size({a, b}, "invariant_subspace_witness");
  const std::size_t n = a.rows();
  if (n < 2) return std::nullopt;

  const std::vector<Matrix> gens{a, b};
  for (const auto& v : detail::eigen_seeds(gens)) {
    Subspace w = detail::invariant_closure(v, gens);
    if (w.dim() < n) return w;
  }

  const std::vector<Matrix> dual{a.transpose(), b.transpose()};
  for (const auto& v : detail::eigen_seeds(dual)) {
    const Subspace w = detail::invariant_closure(v, dual);
    if (w.dim() < n) return Subspace::span(kernel_basis(w.basis().transpose()));
  }
  return std::nullopt;
}

}  // namespace tdpert

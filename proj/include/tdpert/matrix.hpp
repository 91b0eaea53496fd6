#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tdpert/errors.hpp"
#include "tdpert/polynomial.hpp"
#include "tdpert/rational.hpp"

namespace tdpert {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
///
/// Zero-column matrices are allowed; they are how the zero subspace stores
/// its (empty) basis.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw ShapeError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }
  static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static Matrix diagonal(const std::vector<Rational>& diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }
  static Matrix column(const Vector& v) {
    Matrix m(v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
    return m;
  }
  /// Columns side by side; all must have the same length `rows`.
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw ShapeError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }
  [[nodiscard]] const std::vector<Rational>& entries() const { return data_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(const Rational& c) {
    for (auto& x : data_) x *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& c) { return a *= c; }
  friend Matrix operator*(const Rational& c, Matrix a) { return a *= c; }
  friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw ShapeError("matrix product of " + a.shape() + " by " + b.shape());
    }
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& bkj = b(k, j);
          if (!bkj.is_zero()) out(i, j) += aik * bkj;
        }
      }
    }
    return out;
  }
  friend Vector operator*(const Matrix& a, const Vector& v) {
    if (a.cols_ != v.size()) throw ShapeError("matrix-vector product of " + a.shape());
    Vector out(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (!a(i, k).is_zero() && !v[k].is_zero()) out[i] += a(i, k) * v[k];
      }
    }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) = default;

  [[nodiscard]] std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  [[nodiscard]] std::string str() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i == 0 ? "[" : ", [";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j != 0) out += ", ";
        out += (*this)(i, j).str();
      }
      out += "]";
    }
    return out + "]";
  }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw ShapeError(std::string("matrix ") + op + " of " + shape() + " and " + o.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) throw ShapeError(std::string(what) + ": expected a square matrix, got " + m.shape());
}

/// Columns of a then columns of b.
inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ShapeError("hstack row mismatch");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

inline Rational trace(const Matrix& m) {
  require_square(m, "trace");
  Rational t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// Integer power of a square matrix, exponent >= 0.
inline Matrix mat_pow(const Matrix& m, unsigned exponent) {
  require_square(m, "mat_pow");
  Matrix result = Matrix::identity(m.rows());
  for (unsigned k = 0; k < exponent; ++k) result = result * m;
  return result;
}

/// Horner evaluation of p at a square matrix.
inline Matrix mat_poly_eval(const Polynomial& p, const Matrix& a) {
  require_square(a, "mat_poly_eval");
  const std::size_t n = a.rows();
  Matrix acc(n, n);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = acc * a;
    for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
  }
  return acc;
}

/// Reduced row echelon form: every pivot is 1 and is the only nonzero entry
/// of its column.
struct RowEchelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

inline RowEchelon rref(Matrix m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const Rational inv = m(row, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, c).is_zero()) continue;
      const Rational f = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(r, j) -= f * m(row, j);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).pivot_cols.size(); }

/// Basis of the null space as the columns of an (cols x nullity) matrix.
/// One basis vector per free column, with a 1 in that position.
inline Matrix kernel_basis(const Matrix& m) {
  const auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols());
    v[free] = Rational(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, free);
    basis.push_back(std::move(v));
  }
  return Matrix::from_columns(m.cols(), basis);
}

inline Matrix inverse(const Matrix& m) {
  require_square(m, "inverse");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  const auto [r, pivots] = rref(hstack(m, Matrix::identity(n)));
  if (pivots.size() < n || pivots[n - 1] != n - 1) throw std::domain_error("inverse of a singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r(i, n + j);
  }
  return inv;
}

inline Rational determinant(Matrix m) {
  require_square(m, "determinant");
  const std::size_t n = m.rows();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) return Rational(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    const Rational inv = m(c, c).inverse();
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c).is_zero()) continue;
      const Rational f = m(r, c) * inv;
      for (std::size_t j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier.
inline Polynomial characteristic_polynomial(const Matrix& m) {
  require_square(m, "characteristic_polynomial");
  const std::size_t n = m.rows();
  std::vector<Rational> c(n + 1);
  c[n] = Rational(1);
  Matrix mk = Matrix::zero(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
    mk = m * mk;
    c[n - k] = -trace(mk) / Rational(static_cast<long>(k));
  }
  return Polynomial(std::move(c));
}

/// Distinct rational eigenvalues, ascending.
inline std::vector<Rational> rational_eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return {};
  return rational_roots(characteristic_polynomial(m));
}

}  // namespace tdpert

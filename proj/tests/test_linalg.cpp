#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace tdpert;
using tdtest::r;

namespace {

const Matrix kA{{r(1, 2), r(0)}, {r(1), r(2)}};
const Matrix kAStar{{r(2), r(1)}, {r(0), r(1, 2)}};

Subspace line(const Rational& x, const Rational& y) { return Subspace::span(2, {Vector{x, y}}); }

}  // namespace

TEST_CASE("matrix basics", "[linalg]") {
  CHECK(trace(Matrix::identity(3)) == r(3));
  CHECK(rank(Matrix::zero(2, 2)) == 0);
  CHECK(rank(kA) == 2);
  CHECK(inverse(kA) * kA == Matrix::identity(2));
  CHECK(determinant(kA) == r(1));
  CHECK_THROWS(inverse(Matrix{{r(1), r(2)}, {r(2), r(4)}}));
  CHECK_THROWS_AS(kA * Matrix::zero(3, 3), ShapeError);
  CHECK_THROWS_AS(Matrix({{r(1), r(2)}, {r(3)}}), ShapeError);
  const Matrix k = kernel_basis(Matrix{{r(1), r(2)}, {r(2), r(4)}});
  CHECK(k.cols() == 1);
  CHECK(Matrix{{r(1), r(2)}, {r(2), r(4)}} * k == Matrix::zero(2, 1));
}

TEST_CASE("the chi trace of the d=1 fixture", "[linalg]") {
  const Matrix e_star0{{r(1), r(2, 3)}, {r(0), r(0)}};
  CHECK(trace(Matrix{{r(0), r(0)}, {r(1), r(3, 2)}} * e_star0) == r(2, 3));
}

TEST_CASE("matrix polynomial evaluation", "[linalg]") {
  CHECK(mat_poly_eval(Polynomial::x(), kA) == kA);
  CHECK(mat_poly_eval(Polynomial::constant(r(1)), kA) == Matrix::identity(2));
  CHECK(mat_poly_eval(Polynomial::linear(r(1, 2)), kA) == Matrix{{r(0), r(0)}, {r(1), r(3, 2)}});
  CHECK_THROWS_AS(mat_poly_eval(Polynomial::x(), Matrix::zero(2, 3)), ShapeError);
}

TEST_CASE("matrix polynomial evaluation is multiplicative", "[linalg][property]") {
  tdtest::Gen gen(21);
  for (int k = 0; k < 30; ++k) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 4));
    const Matrix a = gen.matrix(n, n);
    std::vector<Rational> pc;
    std::vector<Rational> rc;
    for (long long i = 0, deg = gen.integer(0, 4); i <= deg; ++i) pc.push_back(gen.rational());
    for (long long i = 0, deg = gen.integer(0, 4); i <= deg; ++i) rc.push_back(gen.rational());
    const Polynomial p(pc);
    const Polynomial q(rc);
    CHECK(mat_poly_eval(p * q, a) == mat_poly_eval(p, a) * mat_poly_eval(q, a));
    CHECK(mat_poly_eval(p + q, a) == mat_poly_eval(p, a) + mat_poly_eval(q, a));
  }
}

TEST_CASE("characteristic polynomial and rational eigenvalues", "[linalg]") {
  CHECK(characteristic_polynomial(kA) == Polynomial{r(1), r(-5, 2), r(1)});
  CHECK(rational_eigenvalues(kA) == std::vector<Rational>{r(1, 2), r(2)});
  // x^2 - 2 has no rational roots
  CHECK(rational_eigenvalues(Matrix{{r(0), r(2)}, {r(1), r(0)}}).empty());
  tdtest::Gen gen(22);
  for (int k = 0; k < 20; ++k) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 4));
    const Matrix a = gen.matrix(n, n);
    CHECK(mat_poly_eval(characteristic_polynomial(a), a).is_zero());
  }
}

TEST_CASE("subspace operations", "[linalg]") {
  const Subspace x = line(r(1), r(0));
  const Subspace y = line(r(0), r(1));
  const Subspace full = Subspace::full(2);
  const Subspace zero = Subspace::zero(2);
  CHECK(subspace_intersect(x, x) == x);
  CHECK(subspace_intersect(x, full) == x);
  CHECK(subspace_intersect(x, y) == zero);
  CHECK(subspace_sum(x, zero) == x);
  CHECK(subspace_sum(x, y) == full);
  CHECK(subspace_sum(x, x) == x);
  CHECK(zero.dim() == 0);
  CHECK(zero.basis().cols() == 0);
  CHECK(subspace_intersect(zero, full) == zero);
  CHECK_THROWS_AS(subspace_sum(x, Subspace::full(3)), ShapeError);
  CHECK_THROWS_AS(subspace_intersect(x, Subspace::full(3)), ShapeError);
}

TEST_CASE("maps_into", "[linalg]") {
  const Subspace x = line(r(1), r(0));
  const Subspace y = line(r(0), r(1));
  CHECK(maps_into(Matrix::identity(2), x, x));
  CHECK(maps_into(Matrix::zero(2, 2), x, Subspace::zero(2)));
  CHECK(maps_into(Matrix{{r(0), r(0)}, {r(1), r(3, 2)}}, x, y));
  CHECK_FALSE(maps_into(kA, x, x));
  CHECK_THROWS_AS(maps_into(Matrix::identity(3), x, x), ShapeError);
}

TEST_CASE("subspace canonical form", "[linalg][property]") {
  tdtest::Gen gen(23);
  for (int k = 0; k < 50; ++k) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 6));
    const auto m = static_cast<std::size_t>(gen.integer(0, 5));
    const Matrix cols = gen.matrix(n, m);
    // right multiplication by an invertible matrix keeps the column span
    const Matrix mixed = m == 0 ? cols : cols * gen.invertible(m);
    CHECK(Subspace::span(cols) == Subspace::span(mixed));
    CHECK(Subspace::span(cols).dim() == rank(cols));
    const Subspace s = Subspace::span(cols);
    CHECK(Subspace::span(s.basis()) == s);
  }
}

TEST_CASE("dimension formula for sums and intersections", "[linalg][property]") {
  tdtest::Gen gen(24);
  for (int k = 0; k < 60; ++k) {
    const auto n = static_cast<std::size_t>(gen.integer(1, 12));
    const Subspace s = gen.subspace(n, n);
    const Subspace t = gen.subspace(n, n);
    const Subspace sum = subspace_sum(s, t);
    const Subspace meet = subspace_intersect(s, t);
    CHECK(s.dim() + t.dim() == sum.dim() + meet.dim());
    CHECK(sum.contains(s));
    CHECK(sum.contains(t));
    CHECK(s.contains(meet));
    CHECK(t.contains(meet));
  }
}

TEST_CASE("generated algebra dimension", "[linalg]") {
  CHECK(generated_algebra_dim({Matrix::identity(3)}) == 1);
  CHECK(generated_algebra_dim({Matrix::diagonal({r(1), r(2)})}) == 2);
  CHECK(generated_algebra_dim({kA, kAStar}) == 4);
  // upper triangular 2x2 matrices
  CHECK(generated_algebra_dim({Matrix{{r(1), r(1)}, {r(0), r(2)}}, Matrix{{r(3), r(0)}, {r(0), r(1)}}}) == 3);
  CHECK_THROWS_AS(generated_algebra_dim({Matrix::identity(2), Matrix::identity(3)}), ShapeError);
}

TEST_CASE("invariant subspace witness", "[linalg]") {
  const auto w = invariant_subspace_witness(Matrix::identity(2), Matrix::identity(2));
  REQUIRE(w.has_value());
  CHECK(*w == line(r(1), r(0)));

  const Matrix b_star_bad{{r(2), r(9, 4)}, {r(0), r(1, 2)}};
  const auto bad = invariant_subspace_witness(kA, b_star_bad);
  REQUIRE(bad.has_value());
  CHECK(*bad == line(r(3), r(-2)));

  CHECK_FALSE(invariant_subspace_witness(kA, kAStar).has_value());
  CHECK_THROWS_AS(invariant_subspace_witness(kA, Matrix::identity(3)), ShapeError);
}

TEST_CASE("witness found through the dual pass", "[linalg]") {
  // Common invariant plane {z = 0}; neither restriction to it has a rational
  // eigenvector, so only the transposes expose it.
  const Matrix a{{r(0), r(2), r(5)}, {r(1), r(0), r(7)}, {r(0), r(0), r(3)}};
  const Matrix b{{r(0), r(3), r(1)}, {r(1), r(0), r(1)}, {r(0), r(0), r(5)}};
  const auto w = invariant_subspace_witness(a, b);
  REQUIRE(w.has_value());
  CHECK(*w == Subspace::span(3, {Vector{r(1), r(0), r(0)}, Vector{r(0), r(1), r(0)}}));
  CHECK(tdtest::invariant_under(*w, a));
  CHECK(tdtest::invariant_under(*w, b));
  CHECK(generated_algebra_dim({a, b}) < 9);
}

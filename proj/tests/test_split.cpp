#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace tdpert;
using tdtest::r;

namespace {

Subspace line(const Rational& x, const Rational& y) { return Subspace::span(2, {Vector{x, y}}); }

}  // namespace

TEST_CASE("split decomposition of the d=1 fixture", "[split]") {
  const auto d1 = build_seed("d1");
  const auto u = split_decomposition(d1);
  REQUIRE(u.size() == 2);
  CHECK(u[0] == line(r(1), r(0)));
  CHECK(u[1] == line(r(0), r(1)));
  CHECK(verify_split(d1, u));
  CHECK_FALSE(verify_split(d1, {u[1], u[0]}));
  CHECK(ladder_eigenvalue(d1, u, 0) == r(1));
  CHECK(ladder_eigenvalue(d1, u, 1) == r(1));

  const auto phi5 = build_seed("d1-phi5");
  CHECK(ladder_eigenvalue(phi5, split_decomposition(phi5), 1) == r(5));
}

TEST_CASE("split decomposition of the trivial system", "[split]") {
  const auto d0 = tdtest::trivial_system();
  const auto u = split_decomposition(d0);
  REQUIRE(u.size() == 1);
  CHECK(u[0].is_full());
  CHECK(verify_split(d0, u));
  CHECK(ladder_eigenvalue(d0, u, 0) == r(1));
}

TEST_CASE("split decomposition fails on a reducible pair", "[split]") {
  // A* = A with the dual ordering reversed: U_0 = U_1 = E_1 V
  const Matrix a{{r(1, 2), r(0)}, {r(1), r(2)}};
  const auto commuting = assemble_system(r(2), a, a, {r(1, 2), r(2)}, {r(2), r(1, 2)});
  CHECK_THROWS_AS(split_decomposition(commuting), StructuralError);
}

TEST_CASE("split structure on every fixture", "[split][property]") {
  std::vector<ParallelSystem> systems;
  for (const auto& f : tdtest::fixtures()) systems.push_back(f.ps);
  for (auto& ps : tdtest::random_d1_systems(20, 41)) systems.push_back(std::move(ps));
  for (const auto& ps : systems) {
    const auto u = split_decomposition(ps);
    const std::size_t n = ps.dim();
    CHECK(verify_split(ps, u));
    std::size_t total = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      total += u[i].dim();
      CHECK(u[i].dim() == rank(ps.E[i]));
      CHECK(u[i].dim() == rank(ps.E_star[i]));
    }
    CHECK(total == n);

    // (A - θ_{i-1})...(A - θ_0) U_0 ⊆ U_i and (A* - θ*_{i+1})...(A* - θ*_d) U_d ⊆ U_i
    const Matrix id = Matrix::identity(n);
    const auto d = static_cast<std::size_t>(ps.diameter());
    Matrix up = id;
    for (std::size_t i = 0; i <= d; ++i) {
      CHECK(maps_into(up, u[0], u[i]));
      up = (ps.A - ps.theta[i] * id) * up;
    }
    Matrix down = id;
    for (std::size_t i = d + 1; i-- > 0;) {
      CHECK(maps_into(down, u[d], u[i]));
      down = (ps.A_star - ps.theta_star[i] * id) * down;
    }

    const auto zeta = split_sequence(ps);
    for (int i = 0; i <= ps.diameter(); ++i) CHECK(ladder_eigenvalue(ps, u, i) == zeta[static_cast<std::size_t>(i)]);
  }
}

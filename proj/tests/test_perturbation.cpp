#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace tdpert;
using tdtest::r;

TEST_CASE("the map K", "[perturbation]") {
  const auto d1 = build_seed("d1");
  const auto k = k_map(d1, split_decomposition(d1));
  CHECK(k == Matrix::diagonal({r(2), r(1, 2)}));
  const QContext ctx(r(2), 1);
  CHECK(r(2) * (k * d1.A) - r(1, 2) * (d1.A * k) == r(3, 2) * Matrix::identity(2));
  CHECK(verify_k_relations(k, d1.A, d1.A_star, ctx));
  CHECK_FALSE(verify_k_relations(r(2) * k, d1.A, d1.A_star, ctx));
  CHECK_THROWS_AS(verify_k_relations(Matrix::zero(2, 2), d1.A, d1.A_star, ctx), PreconditionError);

  const auto d0 = tdtest::trivial_system();
  CHECK(k_map(d0, split_decomposition(d0)) == Matrix{{r(1)}});

  const auto d2 = build_seed("d2");
  const auto u2 = split_decomposition(d2);
  const auto k2 = k_map(d2, u2);
  const auto e = primitive_idempotents(k2, {r(4), r(1), r(1, 4)});
  for (std::size_t i = 0; i < 3; ++i) CHECK(image(e[i]) == u2[i]);
  CHECK(verify_k_relations(k2, d2.A, d2.A_star, QContext(r(2), 2)));

  const auto scaled = assemble_system(r(2), r(3) * d1.A, d1.A_star, {r(3, 2), r(6)}, d1.theta_star);
  CHECK_THROWS_AS(k_map(scaled, split_decomposition(scaled)), PreconditionError);
}

TEST_CASE("K relations hold on every fixture", "[perturbation][property]") {
  for (const auto& f : tdtest::fixtures()) {
    const auto k = k_map(f.ps, split_decomposition(f.ps));
    CHECK(verify_k_relations(k, f.ps.A, f.ps.A_star, f.ps.ctx));
  }
  for (const auto& ps : tdtest::random_d1_systems(20, 61)) {
    CHECK(verify_k_relations(k_map(ps, split_decomposition(ps)), ps.A, ps.A_star, ps.ctx));
  }
}

TEST_CASE("perturbing the d=1 fixture", "[perturbation]") {
  const auto d1 = build_seed("d1");
  const auto one = perturb(d1, r(1));
  CHECK(one.B_star == d1.A_star);
  CHECK(one.E_prime == d1.E_star);

  const auto zero = perturb(d1, r(0));
  CHECK(zero.B_star == zero.K);
  CHECK(zero.E_prime.size() == 2);

  const auto bad = perturb(d1, r(9, 4));
  CHECK(bad.B == d1.A);
  CHECK(bad.B_star == Matrix{{r(2), r(9, 4)}, {r(0), r(1, 2)}});
  for (const auto& t : {r(2), r(9, 4), r(1), r(0)}) CHECK(verify_perturbation_structure(perturb(d1, t)).all());
}

TEST_CASE("perturbed split sequences", "[perturbation]") {
  const auto d1 = build_seed("d1");
  CHECK(perturbed_split_sequence(perturb(d1, r(1))) == std::vector<Rational>{r(1), r(1)});
  CHECK(perturbed_split_sequence(perturb(d1, r(2))) == std::vector<Rational>{r(1), r(2)});
  const auto d2 = build_seed("d2");
  const auto zeta = split_sequence(d2);
  CHECK(perturbed_split_sequence(perturb(d2, r(3))) == std::vector<Rational>{zeta[0], r(3) * zeta[1], r(9) * zeta[2]});
}

TEST_CASE("theorem verdicts on the d=1 fixture", "[perturbation]") {
  const auto d1 = build_seed("d1");
  const auto good = theorem_verdict(d1, r(1));
  CHECK(good.predicted);
  CHECK(good.actual);

  const auto bad = theorem_verdict(d1, r(9, 4));
  CHECK_FALSE(bad.predicted);
  CHECK_FALSE(bad.actual);
  CHECK(bad.failing_axiom == std::optional<std::string>("irreducibility"));
  REQUIRE(bad.witness.has_value());
  CHECK(*bad.witness == Subspace::span(2, {Vector{r(3), r(-2)}}));

  const auto zero = theorem_verdict(d1, r(0));
  CHECK_FALSE(zero.predicted);
  CHECK_FALSE(zero.actual);
  CHECK(generated_algebra_dim({d1.A, perturb(d1, r(0)).B_star}) < 4);
}

TEST_CASE("the theorem needs d >= 1", "[perturbation]") {
  // at d = 0 every pair is irreducible, including t = 0
  const auto d0 = tdtest::trivial_system();
  CHECK(verify_system(perturb(d0, r(0)).system()).is_td_system);
  CHECK_THROWS_AS(theorem_verdict(d0, r(1)), PreconditionError);
}

TEST_CASE("theorem scan ordering", "[perturbation]") {
  const auto rows = theorem_scan(build_seed("d1"), {r(2), r(-1), r(2), r(0)});
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].t == r(-1));
  CHECK(rows[1].t == r(0));
  CHECK(rows[2].t == r(2));
}

TEST_CASE("theorem consistency and structure checks over the t grid", "[perturbation][property]") {
  std::uint64_t seed = 62;
  for (const auto& f : tdtest::fixtures()) {
    INFO(f.name);
    const auto zeta = split_sequence(f.ps);
    const auto p = drinfeld_poly(zeta, QContext(f.ps.ctx.q, f.ps.diameter()));
    for (const auto& t : tdtest::t_grid(f.ps, 20, seed++)) {
      INFO("t = " << t);
      const auto pert = perturb(f.ps, t);
      CHECK(verify_perturbation_structure(pert).all());
      const auto ps = pert.system();
      const auto report = verify_system(ps);
      CHECK(report.is_parallel);
      CHECK(report.td_band_ok);
      if (ps.diameter() >= 1) CHECK(report.irreducible == predict_td(p, t));
      CHECK(report.is_sharp);
      CHECK(report.qserre_ok);
      CHECK(is_qserre_spectrum(parameter_array(ps), ps.ctx));
      std::vector<Rational> expected;
      for (std::size_t i = 0; i < zeta.size(); ++i) expected.push_back(t.pow(static_cast<long>(i)) * zeta[i]);
      CHECK(parameter_array(ps) == ParameterArray{ps.diameter(), ps.theta, ps.theta_star, expected});
      if (ps.diameter() >= 1) CHECK_NOTHROW(theorem_verdict(f.ps, t));
    }
  }
}

TEST_CASE("perturbing by t and then by 1/t", "[perturbation][property]") {
  for (const auto& f : tdtest::fixtures()) {
    for (const auto& t : tdtest::t_grid(f.ps, 5, 63)) {
      const auto p = drinfeld_poly(split_sequence(f.ps), QContext(f.ps.ctx.q, f.ps.diameter()));
      if (!predict_td(p, t)) continue;
      INFO(f.name << " t = " << t);
      const auto there = perturb(f.ps, t).system();
      REQUIRE(verify_system(there).is_td_system);
      const auto back = perturb(there, t.inverse()).system();
      CHECK(parameter_array(back) == parameter_array(f.ps));
      const auto s = find_isomorphism(f.ps, back);
      REQUIRE(s.has_value());
      CHECK_FALSE(determinant(*s).is_zero());
      CHECK(tdtest::intertwines(*s, f.ps, back));
    }
  }
}

TEST_CASE("perturb rejects non-normalized systems", "[perturbation]") {
  const auto ps =
      from_parameter_array_thin(ParameterArray{1, {r(1), r(2)}, {r(2), r(1)}, {r(1), r(1)}}, QContext(r(2), 1));
  CHECK_THROWS_AS(perturb(ps, r(1)), PreconditionError);
}

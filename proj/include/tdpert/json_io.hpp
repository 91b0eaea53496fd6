#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tdpert/drinfeld.hpp"
#include "tdpert/parallel_system.hpp"
#include "tdpert/perturbation.hpp"
#include "tdpert/subspace.hpp"

namespace tdpert {

using json = nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

}  // namespace detail

inline json rational_to_json(const Rational& r) { return r.str(); }

/// Accepts "p/q" strings and JSON integers.
inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("rational must be a \"p/q\" string, got " + j.dump());
}

inline json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(rational_to_json(r));
  return out;
}

inline std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

/// {"rows": n, "cols": m, "entries": [["p/q", ...], ...]}
inline json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
    entries.push_back(std::move(row));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const json& j) {
  const int rows = detail::int_field(j, "rows");
  const int cols = detail::int_field(j, "cols");
  if (rows <= 0 || cols < 0) throw ParseError("matrix dimensions must be positive");
  const json& entries = detail::field(j, "entries");
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(rows)) {
    throw ParseError("matrix entries must have \"rows\" rows");
  }
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const json& row = entries[i];
    if (!row.is_array() || row.size() != m.cols()) throw ParseError("matrix row " + std::to_string(i) + " has the wrong length");
    for (std::size_t c = 0; c < m.cols(); ++c) m(i, c) = rational_from_json(row[c]);
  }
  return m;
}

/// Subspaces travel as their canonical basis matrix.
inline json subspace_to_json(const Subspace& s) { return matrix_to_json(s.basis()); }
inline Subspace subspace_from_json(const json& j) { return Subspace::span(matrix_from_json(j)); }

inline json polynomial_to_json(const Polynomial& p) { return {{"coeffs", rationals_to_json(p.coeffs())}}; }
inline Polynomial polynomial_from_json(const json& j) {
  return Polynomial(rationals_from_json(detail::field(j, "coeffs")));
}

/// {"q", "d", "A", "A_star", "theta", "theta_star"}; idempotents are not stored.
inline json system_to_json(const ParallelSystem& ps) {
  return {{"q", rational_to_json(ps.ctx.q)},         {"d", ps.diameter()},
          {"A", matrix_to_json(ps.A)},                {"A_star", matrix_to_json(ps.A_star)},
          {"theta", rationals_to_json(ps.theta)},     {"theta_star", rationals_to_json(ps.theta_star)}};
}

/// Rebuilds the idempotents from A, A* and the eigenvalue lists.
inline ParallelSystem system_from_json(const json& j) {
  const Rational q = rational_from_json(detail::field(j, "q"));
  const int d = detail::int_field(j, "d");
  auto theta = rationals_from_json(detail::field(j, "theta"));
  auto theta_star = rationals_from_json(detail::field(j, "theta_star"));
  if (d < 0 || theta.size() != static_cast<std::size_t>(d + 1) || theta_star.size() != theta.size()) {
    throw ParseError("system: theta and theta_star must have d+1 entries");
  }
  return assemble_system(q, matrix_from_json(detail::field(j, "A")), matrix_from_json(detail::field(j, "A_star")),
                         std::move(theta), std::move(theta_star));
}

/// {"q", "d", "theta", "theta_star", "zeta"}
inline json parameter_array_to_json(const ParameterArray& pa, const Rational& q) {
  return {{"q", rational_to_json(q)},
          {"d", pa.d},
          {"theta", rationals_to_json(pa.theta)},
          {"theta_star", rationals_to_json(pa.theta_star)},
          {"zeta", rationals_to_json(pa.zeta)}};
}

inline std::pair<QContext, ParameterArray> parameter_array_from_json(const json& j) {
  ParameterArray pa;
  pa.d = detail::int_field(j, "d");
  pa.theta = rationals_from_json(detail::field(j, "theta"));
  pa.theta_star = rationals_from_json(detail::field(j, "theta_star"));
  pa.zeta = rationals_from_json(detail::field(j, "zeta"));
  pa.validate();
  return {QContext(rational_from_json(detail::field(j, "q")), pa.d), std::move(pa)};
}

inline json verdict_to_json(const TheoremVerdict& v) {
  return {{"t", rational_to_json(v.t)},
          {"predicted", v.predicted},
          {"actual", v.actual},
          {"failing_axiom", v.failing_axiom ? json(*v.failing_axiom) : json(nullptr)},
          {"witness", v.witness ? subspace_to_json(*v.witness) : json(nullptr)}};
}

inline json scan_to_json(const std::vector<TheoremVerdict>& rows) {
  json out = json::array();
  for (const auto& v : rows) out.push_back(verdict_to_json(v));
  return out;
}

inline json axiom_report_to_json(const AxiomReport& r) {
  return {{"is_parallel", r.is_parallel},
          {"is_sharp", r.is_sharp},
          {"td_band_ok", r.td_band_ok},
          {"irreducible", r.irreducible},
          {"mock_corners_ok", r.mock_corners_ok},
          {"qserre_ok", r.qserre_ok},
          {"is_td_system", r.is_td_system},
          {"is_mock_td_system", r.is_mock_td_system},
          {"algebra_dim", r.algebra_dim},
          {"failing_axiom", r.failing_axiom() ? json(*r.failing_axiom()) : json(nullptr)},
          {"witness", r.witness ? subspace_to_json(*r.witness) : json(nullptr)},
          {"issues", r.issues}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace tdpert

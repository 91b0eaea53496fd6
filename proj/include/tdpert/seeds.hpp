#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tdpert/parallel_system.hpp"
#include "tdpert/split_sequence.hpp"

namespace tdpert {

/// A named parameter array from which a thin system is rebuilt on demand.
struct Seed {
  std::string name;
  Rational q;
  ParameterArray pa;
};

namespace detail {

inline Seed geometric_seed(std::string name, int d, std::vector<Rational> zeta) {
  const QContext ctx(Rational(2), d);
  auto [theta, theta_star] = geometric_eigenvalues(ctx);
  return {std::move(name), ctx.q, ParameterArray{d, std::move(theta), std::move(theta_star), std::move(zeta)}};
}

}  // namespace detail

/// Built-in seeds, all at q = 2. "d2" is the first candidate accepted by the
/// (φ1, φ2) sweep over rationals with numerator and denominator at most 12;
/// the test suite re-runs that sweep.
inline const std::vector<Seed>& builtin_seeds() {
  static const std::vector<Seed> seeds{
      detail::geometric_seed("d1", 1, {Rational(1), Rational(1)}),
      detail::geometric_seed("d1-phi5", 1, {Rational(1), Rational(5)}),
      detail::geometric_seed("d2", 2, {Rational(1), Rational(1), Rational(1)}),
  };
  return seeds;
}

inline const Seed& find_seed(std::string_view name) {
  for (const auto& s : builtin_seeds()) {
    if (s.name == name) return s;
  }
  throw PreconditionError("unknown seed \"" + std::string(name) + "\" (expected d1, d1-phi5 or d2)");
}

inline ParallelSystem build_seed(std::string_view name) {
  const Seed& s = find_seed(name);
  return from_parameter_array_thin(s.pa, QContext(s.q, s.pa.d));
}

}  // namespace tdpert

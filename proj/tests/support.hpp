#pragma once

// Fixtures, seeded generators and the d = 2 sweep shared by the unit tests
// and the acceptance runner.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tdpert/tdpert.hpp"

namespace tdtest {

using tdpert::Matrix;
using tdpert::ParallelSystem;
using tdpert::ParameterArray;
using tdpert::QContext;
using tdpert::Rational;
using tdpert::Subspace;
using tdpert::Vector;

inline Rational r(long long p, long long q = 1) { return {p, q}; }

inline ParameterArray geometric_pa(const Rational& q, std::vector<Rational> zeta) {
  const int d = static_cast<int>(zeta.size()) - 1;
  auto [theta, theta_star] = tdpert::geometric_eigenvalues(QContext(q, d));
  return {d, std::move(theta), std::move(theta_star), std::move(zeta)};
}

inline ParallelSystem thin(const Rational& q, std::vector<Rational> zeta) {
  const auto pa = geometric_pa(q, std::move(zeta));
  return tdpert::from_parameter_array_thin(pa, QContext(q, pa.d));
}

/// d = 0: V one-dimensional, A = A* = (1).
inline ParallelSystem trivial_system() {
  return tdpert::assemble_system(r(2), Matrix{{r(1)}}, Matrix{{r(1)}}, {r(1)}, {r(1)});
}

struct Fixture {
  std::string name;
  ParallelSystem ps;
};

/// Every verified q-Serre fixture: the built-in seeds plus d = 0.
inline std::vector<Fixture> fixtures() {
  std::vector<Fixture> out;
  for (const auto& s : tdpert::builtin_seeds()) out.push_back({s.name, tdpert::build_seed(s.name)});
  out.push_back({"d0", trivial_system()});
  return out;
}

/// Deterministic generator of small rationals.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long integer(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

  Rational rational(long long bound = 9) {
    return {integer(-bound, bound), integer(1, bound)};
  }

  Rational nonzero(long long bound = 9) {
    for (;;) {
      Rational x = rational(bound);
      if (!x.is_zero()) return x;
    }
  }

  /// A valid q: nonzero and |q| != 1.
  Rational q_value() {
    for (;;) {
      Rational q = nonzero(5);
      if (q.abs() != Rational(1)) return q;
    }
  }

  Matrix matrix(std::size_t rows, std::size_t cols, long long bound = 3) {
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = Rational(integer(-bound, bound));
    }
    return m;
  }

  Matrix invertible(std::size_t n) {
    for (;;) {
      Matrix m = matrix(n, n, 2);
      if (!tdpert::determinant(m).is_zero()) return m;
    }
  }

  Vector vector(std::size_t n, long long bound = 3) {
    Vector v(n);
    for (auto& x : v) x = Rational(integer(-bound, bound));
    return v;
  }

  Subspace subspace(std::size_t n, std::size_t max_gens) {
    const auto count = static_cast<std::size_t>(integer(0, static_cast<long long>(max_gens)));
    std::vector<Vector> gens;
    for (std::size_t k = 0; k < count; ++k) gens.push_back(vector(n, 2));
    return Subspace::span(n, gens);
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Random thin d = 1 systems at random q with geometric spectra, keeping
/// only candidates that verify as tridiagonal systems.
inline std::vector<ParallelSystem> random_d1_systems(std::size_t count, std::uint64_t seed) {
  Gen gen(seed);
  std::vector<ParallelSystem> out;
  while (out.size() < count) {
    const Rational q = gen.q_value();
    ParallelSystem ps = thin(q, {r(1), gen.nonzero()});
    if (tdpert::verify_system(ps).is_td_system) out.push_back(std::move(ps));
  }
  return out;
}

/// Rationals p/q with |p|, q <= bound in lowest terms, excluding 0, ordered by
/// height max(|p|, q), then by value with the positive value first.
inline std::vector<Rational> rationals_by_height(long long bound) {
  std::vector<Rational> out;
  for (long long h = 1; h <= bound; ++h) {
    std::vector<Rational> level;
    for (long long den = 1; den <= h; ++den) {
      for (long long num = 1; num <= h; ++num) {
        if (std::max(num, den) != h || std::gcd(num, den) != 1) continue;
        level.emplace_back(num, den);
      }
    }
    std::sort(level.begin(), level.end());
    for (const auto& x : level) {
      out.push_back(x);
      out.push_back(-x);
    }
  }
  return out;
}

struct SweepResult {
  Rational phi1;
  Rational phi2;
  ParallelSystem ps;
  std::size_t candidates_tried = 0;
};

/// Brute-force search for a d = 2, q = 2 thin system: sweep (φ1, φ2) over
/// rationals of height <= bound, pairs ordered by the larger index into
/// rationals_by_height, and return the first candidate that verifies.
inline std::optional<SweepResult> sweep_d2(long long bound = 12) {
  const auto values = rationals_by_height(bound);
  std::size_t tried = 0;
  for (std::size_t level = 0; level < values.size(); ++level) {
    for (std::size_t i = 0; i <= level; ++i) {
      for (std::size_t j = 0; j <= level; ++j) {
        if (std::max(i, j) != level) continue;
        const Rational& p1 = values[i];
        const Rational& p2 = values[j];
        ++tried;
        ParallelSystem ps = thin(r(2), {r(1), p1, p1 * p2});
        const auto report = tdpert::verify_system(ps);
        if (report.is_td_system && report.qserre_ok) return SweepResult{p1, p2, std::move(ps), tried};
      }
    }
  }
  return std::nullopt;
}

/// The grid of t for the theorem scan on a fixture: ±1, ±2, ±1/2, 0, every
/// rational bad t and `extra` random rationals.
inline std::vector<Rational> t_grid(const ParallelSystem& ps, std::size_t extra, std::uint64_t seed) {
  std::vector<Rational> ts{r(1), r(-1), r(2), r(-2), r(1, 2), r(-1, 2), r(0)};
  const auto p = tdpert::drinfeld_poly(tdpert::split_sequence(ps), QContext(ps.ctx.q, ps.diameter()));
  for (const auto& t : tdpert::rational_bad_t(p)) ts.push_back(t);
  Gen gen(seed);
  for (std::size_t k = 0; k < extra; ++k) ts.push_back(gen.rational(12));
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

inline bool invariant_under(const Subspace& w, const Matrix& m) { return tdpert::maps_into(m, w, w); }

inline bool intertwines(const Matrix& s, const ParallelSystem& a, const ParallelSystem& b) {
  return s * a.A == b.A * s && s * a.A_star == b.A_star * s;
}

}  // namespace tdtest

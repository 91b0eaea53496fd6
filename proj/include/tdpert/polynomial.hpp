#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "tdpert/rational.hpp"

namespace tdpert {

/// Univariate polynomial over the rationals, coefficients in ascending degree.
/// Trailing zero coefficients are trimmed; the zero polynomial has no
/// coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(const Rational& c) { return Polynomial({c}); }
  static Polynomial x() { return Polynomial({Rational(0), Rational(1)}); }
  /// The monic linear factor x - root.
  static Polynomial linear(const Rational& root) { return Polynomial({-root, Rational(1)}); }

  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Coefficient of x^i; zero beyond the degree.
  [[nodiscard]] Rational coeff(int i) const {
    if (i < 0 || i > degree()) return Rational(0);
    return coeffs_[static_cast<std::size_t>(i)];
  }

  [[nodiscard]] Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) { return *this += -o; }
  Polynomial& operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  [[nodiscard]] std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + coeffs_[i].str() + ")";
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// Horner evaluation.
inline Rational poly_eval(const Polynomial& p, const Rational& x) {
  Rational acc(0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Product of (x - r) over the given roots; the empty product is 1.
inline Polynomial poly_from_roots(const std::vector<Rational>& roots) {
  Polynomial p = Polynomial::constant(Rational(1));
  for (const auto& r : roots) p = p * Polynomial::linear(r);
  return p;
}

namespace detail {

inline mpz_class pollard_rho(const mpz_class& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class x = 2, y = 2, g = 1;
    auto step = [&](const mpz_class& v) -> mpz_class { return (v * v + c) % n; };
    while (g == 1) {
      x = step(x);
      y = step(step(y));
      mpz_class diff = abs(x - y);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (g != n) return g;
  }
}

inline void factor_into(mpz_class n, std::vector<mpz_class>& primes) {
  if (n == 1) return;
  for (unsigned long p = 2; p < 1000; ++p) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
      primes.emplace_back(p);
      n /= p;
    }
  }
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    primes.push_back(n);
    return;
  }
  const mpz_class f = pollard_rho(n);
  factor_into(f, primes);
  factor_into(n / f, primes);
}

/// Positive divisors of |n| (n != 0), ascending.
inline std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> primes;
  factor_into(abs(n), primes);
  std::sort(primes.begin(), primes.end());
  std::vector<mpz_class> divs{1};
  for (std::size_t i = 0; i < primes.size();) {
    std::size_t j = i;
    while (j < primes.size() && primes[j] == primes[i]) ++j;
    const std::size_t current = divs.size();
    mpz_class power = 1;
    for (std::size_t e = i; e < j; ++e) {
      power *= primes[i];
      for (std::size_t k = 0; k < current; ++k) divs.push_back(divs[k] * power);
    }
    i = j;
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace detail

/// All distinct rational roots of p, ascending. Uses the rational root
/// theorem on the cleared-denominator integer polynomial. The zero polynomial
/// has no well-defined root set and is rejected.
inline std::vector<Rational> rational_roots(const Polynomial& p) {
  if (p.is_zero()) throw PreconditionError("rational_roots of the zero polynomial");
  std::vector<Rational> roots;
  std::vector<Rational> coeffs = p.coeffs();
  // strip the factor x^k
  std::size_t low = 0;
  while (coeffs[low].is_zero()) ++low;
  if (low > 0) roots.emplace_back(0);
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(low));
  if (coeffs.size() <= 1) return roots;

  mpz_class lcm_den = 1;
  for (const auto& c : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.denominator().get_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(coeffs.size());
  for (const auto& c : coeffs) ints.push_back(c.numerator() * (lcm_den / c.denominator()));

  const Polynomial reduced(std::move(coeffs));
  const auto num_divs = detail::divisors(ints.front());
  const auto den_divs = detail::divisors(ints.back());
  for (const auto& a : num_divs) {
    for (const auto& b : den_divs) {
      for (int s : {1, -1}) {
        const Rational candidate(mpz_class(a * s), b);
        if (poly_eval(reduced, candidate).is_zero()) roots.push_back(candidate);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace tdpert

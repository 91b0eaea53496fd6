#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include "tdpert/errors.hpp"

namespace tdpert {

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Values are always kept in canonical form: the denominator is positive and
/// coprime to the numerator, and zero is 0/1. Two Rationals compare equal iff
/// their canonical forms agree.
class Rational {
 public:
  Rational() = default;
  Rational(int value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long long value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long long numerator, long long denominator)
      : Rational(mpz_class(static_cast<long>(numerator)), mpz_class(static_cast<long>(denominator))) {}
  Rational(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) {
      throw std::domain_error("rational with zero denominator");
    }
    value_ = mpq_class(numerator, denominator);
    value_.canonicalize();
  }
  explicit Rational(const mpz_class& integer) : value_(integer) {}

  /// Parses "p/q" or "p". Non-canonical input such as "4/-6" is accepted
  /// and reduced; zero denominators and anything else are rejected.
  static Rational parse(std::string_view text) {
    auto digits = [](std::string_view s) {
      if (s.empty()) return false;
      for (char c : s) {
        if (c < '0' || c > '9') return false;
      }
      return true;
    };
    auto integer = [&](std::string_view s) -> mpz_class {
      std::string_view body = s;
      bool negative = false;
      if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
      }
      if (!digits(body)) {
        throw ParseError("malformed rational: \"" + std::string(text) + "\"");
      }
      mpz_class z(std::string(body), 10);
      return negative ? mpz_class(-z) : z;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return Rational(integer(text));
    }
    const mpz_class num = integer(text.substr(0, slash));
    const mpz_class den = integer(text.substr(slash + 1));
    if (den == 0) {
      throw ParseError("zero denominator in rational: \"" + std::string(text) + "\"");
    }
    return Rational(num, den);
  }

  [[nodiscard]] std::string str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
  }

  [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return value_; }

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
  [[nodiscard]] int sign() const { return sgn(value_); }

  [[nodiscard]] Rational abs() const {
    Rational r;
    r.value_ = ::abs(value_);
    return r;
  }

  [[nodiscard]] Rational inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Rational r;
    r.value_ = 1 / value_;
    return r;
  }

  /// Integer power; negative exponents invert. 0^0 = 1.
  [[nodiscard]] Rational pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Rational r;
    mpz_pow_ui(r.value_.get_num_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(r.value_.get_den_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return r;
  }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) {
    Rational r;
    r.value_ = -a.value_;
    return r;
  }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_{0};
};

/// The fixed deformation parameter q together with the diameter d.
struct QContext {
  Rational q;
  int d = 0;

  QContext() : q(2) {}
  QContext(Rational q_value, int diameter) : q(std::move(q_value)), d(diameter) { validate(); }

  void validate() const {
    if (q.is_zero() || q.abs() == Rational(1)) {
      throw PreconditionError("q must satisfy q != 0 and |q| != 1, got " + q.str());
    }
    if (d < 0) throw PreconditionError("diameter must be nonnegative");
  }

  /// q - 1/q, the denominator of every q-integer.
  [[nodiscard]] Rational q_minus_inverse() const { return q - q.inverse(); }
};

/// [i]_q = (q^i - q^-i) / (q - q^-1).
inline Rational q_int(const QContext& ctx, long i) {
  return (ctx.q.pow(i) - ctx.q.pow(-i)) / ctx.q_minus_inverse();
}

/// [i]!_q = [1]_q [2]_q ... [i]_q, with [0]!_q = 1.
inline Rational q_factorial(const QContext& ctx, long i) {
  if (i < 0) throw PreconditionError("q_factorial of a negative integer");
  Rational result(1);
  for (long n = 1; n <= i; ++n) result *= q_int(ctx, n);
  return result;
}

}  // namespace tdpert

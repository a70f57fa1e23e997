#pragma once

/// Exact arithmetic used throughout: GMP integers and rationals, Gaussian
/// binomial coefficients, and elements of a real quadratic field Q(sqrt d).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qcross {

using Integer = mpz_class;
/// GMP keeps mpq values canonical (lowest terms, positive denominator)
/// after every arithmetic operation.
using Rational = mpq_class;

Integer ipow(long base, unsigned long exponent);
/// base^exponent for a possibly negative exponent; base must be nonzero.
Rational rpow(long base, long exponent);
/// num/den in canonical form.  Throws ArithmeticError for den = 0.
Rational ratio(const Integer& num, const Integer& den);

/// Gaussian coefficient [a, b]_q.  Zero when a < 0, b < 0 or a < b.
/// Throws InvalidParameter when q < 2.
Integer gauss(long a, long b, long q);

/// Largest r with r*r <= x, for x >= 0.
Integer isqrt(const Integer& x);
bool is_perfect_square(const Integer& x);

/// "num/den", always with an explicit denominator.
std::string to_string(const Rational& x);
/// Accepts "p/r" or a bare integer "p".  Throws InvalidParameter.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// a + b*sqrt(d) with a, b rational and d >= 1.  The radicand is kept as
/// given; it is not reduced to squarefree form.  Binary operations require
/// equal radicands.
class QuadraticNumber {
 public:
  /// Zero in Q(sqrt 1).
  QuadraticNumber() : d_(1) {}
  explicit QuadraticNumber(Integer d, Rational a = 0, Rational b = 0);

  static QuadraticNumber rational(const Integer& d, const Rational& a) {
    return QuadraticNumber(d, a, 0);
  }
  static QuadraticNumber radical(const Integer& d, const Rational& b = 1) {
    return QuadraticNumber(d, 0, b);
  }

  const Integer& radicand() const noexcept { return d_; }
  const Rational& rational_part() const noexcept { return a_; }
  const Rational& radical_part() const noexcept { return b_; }

  /// -1, 0 or +1, decided exactly.
  int sign() const;
  bool is_zero() const { return sign() == 0; }

  QuadraticNumber abs() const { return sign() < 0 ? -*this : *this; }
  QuadraticNumber conjugate() const { return QuadraticNumber(d_, a_, -b_); }
  /// a^2 - b^2 d, the field norm.
  Rational norm() const { return a_ * a_ - b_ * b_ * d_; }
  /// The square of the value; lies in the same field.
  QuadraticNumber squared() const { return *this * *this; }

  QuadraticNumber operator-() const { return QuadraticNumber(d_, -a_, -b_); }
  QuadraticNumber& operator+=(const QuadraticNumber& y);
  QuadraticNumber& operator-=(const QuadraticNumber& y);
  QuadraticNumber& operator*=(const QuadraticNumber& y);
  QuadraticNumber& operator/=(const QuadraticNumber& y);
  QuadraticNumber& operator*=(const Rational& y);
  QuadraticNumber& operator/=(const Rational& y);

  friend QuadraticNumber operator+(QuadraticNumber x, const QuadraticNumber& y) { return x += y; }
  friend QuadraticNumber operator-(QuadraticNumber x, const QuadraticNumber& y) { return x -= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const QuadraticNumber& y) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const QuadraticNumber& y) { return x /= y; }
  friend QuadraticNumber operator*(QuadraticNumber x, const Rational& y) { return x *= y; }
  friend QuadraticNumber operator*(const Rational& y, QuadraticNumber x) { return x *= y; }
  friend QuadraticNumber operator/(QuadraticNumber x, const Rational& y) { return x /= y; }

  /// Value comparisons (by sign of the difference), so that perfect-square
  /// radicands compare consistently with their rational collapse.
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() == 0;
  }
  friend bool operator<(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() < 0;
  }
  friend bool operator<=(const QuadraticNumber& x, const QuadraticNumber& y) {
    return (x - y).sign() <= 0;
  }
  friend bool operator>(const QuadraticNumber& x, const QuadraticNumber& y) { return y < x; }
  friend bool operator>=(const QuadraticNumber& x, const QuadraticNumber& y) { return y <= x; }

  /// Representation equality (same d, a, b), stricter than ==.
  bool identical(const QuadraticNumber& y) const {
    return d_ == y.d_ && a_ == y.a_ && b_ == y.b_;
  }

  double to_double() const;

 private:
  void require_same_field(const QuadraticNumber& y) const;

  Integer d_;
  Rational a_;
  Rational b_;
};

std::string to_string(const QuadraticNumber& x);

}  // namespace qcross

#include "qcross/exactnum.hpp"

#include <cmath>
#include <utility>

#include "qcross/errors.hpp"

namespace qcross {

Integer ipow(long base, unsigned long exponent) {
  Integer out;
  Integer b = base;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), exponent);
  return out;
}

Rational rpow(long base, long exponent) {
  if (base == 0) {
    if (exponent <= 0) throw InvalidParameter("rpow: zero base with non-positive exponent");
    return 0;
  }
  if (exponent >= 0) return Rational(ipow(base, static_cast<unsigned long>(exponent)));
  Rational out(Integer(1), ipow(base, static_cast<unsigned long>(-exponent)));
  out.canonicalize();
  return out;
}

Integer gauss(long a, long b, long q) {
  if (q < 2) throw InvalidParameter("gauss: q must be >= 2, got " + std::to_string(q));
  if (a < 0 || b < 0 || a < b) return 0;
  Integer num = 1;
  Integer den = 1;
  for (long i = 0; i < b; ++i) {
    num *= ipow(q, static_cast<unsigned long>(a - i)) - 1;
    den *= ipow(q, static_cast<unsigned long>(b - i)) - 1;
  }
  Integer out;
  mpz_divexact(out.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return out;
}

Integer isqrt(const Integer& x) {
  if (sgn(x) < 0) throw InvalidParameter("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

bool is_perfect_square(const Integer& x) {
  return sgn(x) >= 0 && mpz_perfect_square_p(x.get_mpz_t()) != 0;
}

std::string to_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidParameter("empty integer literal");
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) throw InvalidParameter("malformed integer '" + s + "'");
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw InvalidParameter("malformed integer '" + s + "'");
  }
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational ratio(const Integer& num, const Integer& den) {
  if (sgn(den) == 0) throw ArithmeticError("division by zero");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (sgn(den) == 0) throw InvalidParameter("zero denominator in '" + std::string(text) + "'");
  Rational out(num, den);
  out.canonicalize();
  return out;
}

QuadraticNumber::QuadraticNumber(Integer d, Rational a, Rational b)
    : d_(std::move(d)), a_(std::move(a)), b_(std::move(b)) {
  if (d_ < 1) throw InvalidParameter("quadratic radicand must be >= 1, got " + d_.get_str());
  a_.canonicalize();
  b_.canonicalize();
}

void QuadraticNumber::require_same_field(const QuadraticNumber& y) const {
  if (d_ != y.d_) {
    throw ArithmeticError("radicand mismatch: " + d_.get_str() + " vs " + y.d_.get_str());
  }
}

int QuadraticNumber::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with b^2 d.
  const int c = cmp(Rational(a_ * a_), Rational(b_ * b_ * d_));
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

QuadraticNumber& QuadraticNumber::operator+=(const QuadraticNumber& y) {
  require_same_field(y);
  a_ += y.a_;
  b_ += y.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator-=(const QuadraticNumber& y) {
  require_same_field(y);
  a_ -= y.a_;
  b_ -= y.b_;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const QuadraticNumber& y) {
  require_same_field(y);
  Rational a = a_ * y.a_ + b_ * y.b_ * d_;
  Rational b = a_ * y.b_ + y.a_ * b_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const QuadraticNumber& y) {
  require_same_field(y);
  const int sy = y.sign();
  if (sy == 0) throw ArithmeticError("division by zero in Q(sqrt " + d_.get_str() + ")");
  Rational n = y.norm();
  if (sgn(n) == 0) {
    // Nonzero element of norm zero: d is a perfect square and y collapses
    // to the rational a + b*sqrt(d).
    Rational value = y.a_ + y.b_ * Rational(isqrt(d_));
    return *this /= value;
  }
  *this *= y.conjugate();
  a_ /= n;
  b_ /= n;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator*=(const Rational& y) {
  a_ *= y;
  b_ *= y;
  return *this;
}

QuadraticNumber& QuadraticNumber::operator/=(const Rational& y) {
  if (sgn(y) == 0) throw ArithmeticError("division by zero");
  a_ /= y;
  b_ /= y;
  return *this;
}

double QuadraticNumber::to_double() const {
  return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d());
}

std::string to_string(const QuadraticNumber& x) {
  return to_string(x.rational_part()) + " + " + to_string(x.radical_part()) + "*sqrt(" +
         x.radicand().get_str() + ")";
}

}  // namespace qcross

#pragma once

// Reference computations that share no code with the library: Boost
// multiprecision integers and 200-bit binary floats, formulas evaluated
// directly in their textbook form (including fractional q-powers and
// unreduced square roots).

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <tuple>

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;
using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

/// Gaussian coefficient via [a,b] = [a-1,b-1] + q^b [a-1,b].
inline BigInt gauss(long a, long b, long q) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b == 0 || b == a) return 1;
  static thread_local std::map<std::tuple<long, long, long>, BigInt> memo;
  auto key = std::make_tuple(a, b, q);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  BigInt qb = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(b));
  BigInt v = gauss(a - 1, b - 1, q) + qb * gauss(a - 1, b, q);
  memo.emplace(key, v);
  return v;
}

inline Float to_float(const BigInt& x) { return Float(x); }

inline Float fgauss(long a, long b, long q) { return to_float(gauss(a, b, q)); }

/// Disjointness eigenvalue, evaluated literally:
/// (-1)^i q^{C(i,2) + kl - i(k+l)/2} [n-k-i, l-i] [n-2i, k-i]^{1/2} [n-2i, l-i]^{-1/2}.
inline Float theta(long q, long n, long i, long k, long l) {
  if (k < i || k > n - i) return 0;
  const Float exponent = Float(i * (i - 1)) / 2 + Float(k * l) - Float(i * (k + l)) / 2;
  Float v = boost::multiprecision::pow(Float(q), exponent) * fgauss(n - k - i, l - i, q) *
            boost::multiprecision::sqrt(fgauss(n - 2 * i, k - i, q) / fgauss(n - 2 * i, l - i, q));
  return (i % 2 == 0) ? v : Float(-v);
}

inline Float dual_radicand(long q, long n, long k, long l) {
  return fgauss(n - 1, k - 1, q) * fgauss(n - 1, l - 1, q);
}

inline Float qpow(long q, long e) { return boost::multiprecision::pow(Float(q), Float(e)); }

/// a(lambda) and b(lambda) solved from their defining linear relations.
inline Float coeff_a(long q, long n, long k, long l, const Float& lambda) {
  const Float rootD = boost::multiprecision::sqrt(dual_radicand(q, n, k, l));
  const Float num = Float(0.5) * qpow(q, l) * (qpow(q, k - l) - 1) * rootD +
                    qpow(q, l * l) * (qpow(q, l) - 1) * fgauss(n - l, l, q) * lambda;
  return num / (qpow(q, k * k) * (qpow(q, k) - 1) * fgauss(n - k, k, q));
}

inline Float coeff_b(long q, long n, long k, long l, const Float& lambda) {
  const Float rootD = boost::multiprecision::sqrt(dual_radicand(q, n, k, l));
  const Float num = -Float(0.5) * qpow(q, l) * fgauss(n - 1, l, q) -
                    qpow(q, l * l) * fgauss(n - l, l, q) * (rootD / fgauss(n - 1, k - 1, q)) * lambda;
  return num / (qpow(q, k * l) * fgauss(n - k, l, q));
}

/// Unscaled 2x2 block S_i(lambda) for i <= l.
struct RawBlock {
  Float p, r, s;
  Float det() const { return p * s - r * r; }
};

inline RawBlock raw_block(long q, long n, long k, long l, long i, const Float& lambda) {
  const Float c = boost::multiprecision::sqrt(dual_radicand(q, n, k, l)) / 2;
  const Float a = coeff_a(q, n, k, l, lambda);
  const Float b = coeff_b(q, n, k, l, lambda);
  RawBlock blk;
  blk.p = c - theta(q, n, i, k, k) * a;
  blk.s = c - theta(q, n, i, l, l) * lambda;
  blk.r = -theta(q, n, i, k, l) * b;
  if (i == 0) blk.r -= boost::multiprecision::sqrt(fgauss(n, k, q) * fgauss(n, l, q)) / 2;
  return blk;
}

inline Float raw_scalar(long q, long n, long k, long l, long i, const Float& lambda) {
  const Float c = boost::multiprecision::sqrt(dual_radicand(q, n, k, l)) / 2;
  return c - theta(q, n, i, k, k) * coeff_a(q, n, k, l, lambda);
}

}  // namespace oracle

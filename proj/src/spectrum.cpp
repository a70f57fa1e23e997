#include "qcross/spectrum.hpp"

#include <cmath>
#include <utility>

#include "qcross/errors.hpp"

namespace qcross {

Parameters make_parameters(long q, long n, long k, long l) {
  const std::string tag = "(q=" + std::to_string(q) + ", n=" + std::to_string(n) +
                          ", k=" + std::to_string(k) + ", l=" + std::to_string(l) + ")";
  if (q < 2) throw InvalidParameter("q must be >= 2 " + tag);
  if (k < 1 || l < 1) throw InvalidParameter("k and l must be >= 1 " + tag);
  if (n < 2 * k || n < 2 * l) throw InvalidParameter("need n >= 2k and n >= 2l " + tag);
  Parameters p{q, n, k, l, false};
  if (p.k < p.l) {
    std::swap(p.k, p.l);
    p.swapped = true;
  }
  return p;
}

bool is_prime(long q) {
  if (q < 2) return false;
  for (long f = 2; f * f <= q; ++f) {
    if (q % f == 0) return false;
  }
  return true;
}

bool is_prime_power(long q) {
  if (q < 2) return false;
  long p = 2;
  while (q % p != 0) ++p;
  while (q % p == 0) q /= p;
  return q == 1;
}

Rational Theta::squared() const {
  if (is_zero()) return 0;
  Rational out = rho * rho * ratio(num_rad, den_rad);
  out.canonicalize();
  return out;
}

double Theta::to_double() const {
  if (is_zero()) return 0.0;
  return rho.get_d() * std::sqrt(num_rad.get_d() / den_rad.get_d());
}

Theta theta(const Parameters& params, long i, long k, long l) {
  const long n = params.n;
  const long q = params.q;
  if (i < 0 || 2 * i > n || l < i || l > n - i || k < 0 || k > n) {
    throw InvalidParameter("theta index out of range: i=" + std::to_string(i) +
                           " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                           " n=" + std::to_string(n));
  }
  Theta t;
  t.i = i;
  t.k = k;
  t.l = l;
  t.den_rad = gauss(n - 2 * i, l - i, q);
  if (k < i || k > n - i) {
    t.rho = 0;
    t.num_rad = 0;
    return t;
  }
  t.num_rad = gauss(n - 2 * i, k - i, q);
  // Twice the exponent of q: 2*binom(i,2) + 2kl - i(k+l).
  const long twice = i * (i - 1) + 2 * k * l - i * (k + l);
  long whole = twice / 2;
  if (twice % 2 != 0) {
    // q^(m + 1/2) with m = floor(twice/2): move sqrt(q) under the radical.
    whole = (twice - 1) / 2;
    t.num_rad *= q;
  }
  Rational rho = rpow(q, whole) * Rational(gauss(n - k - i, l - i, q));
  if (i % 2 != 0) rho = -rho;
  t.rho = rho;
  return t;
}

std::vector<Integer> multiplicities(const Parameters& params) {
  std::vector<Integer> d;
  for (long i = 0; 2 * i <= params.n; ++i) {
    d.push_back(gauss(params.n, i, params.q) - gauss(params.n, i - 1, params.q));
  }
  return d;
}

}  // namespace qcross

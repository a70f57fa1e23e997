#include <doctest.h>

#include "qcross/errors.hpp"
#include "qcross/spectrum.hpp"
#include "support.hpp"

using namespace qcross;
using testing_support::to_float;

TEST_CASE("parameter validation and normalization") {
  const Parameters p = make_parameters(2, 6, 2, 3);
  CHECK(p.k == 3);
  CHECK(p.l == 2);
  CHECK(p.swapped);
  CHECK_FALSE(make_parameters(2, 6, 3, 2).swapped);
  CHECK_THROWS_AS(make_parameters(2, 3, 2, 1), InvalidParameter);
  CHECK_THROWS_AS(make_parameters(1, 4, 1, 1), InvalidParameter);
  CHECK_THROWS_AS(make_parameters(2, 4, 0, 1), InvalidParameter);
  CHECK_THROWS_AS(make_parameters(2, 4, 1, 3), InvalidParameter);
}

TEST_CASE("prime powers") {
  for (long q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 121}) CHECK(is_prime_power(q));
  for (long q : {1, 6, 10, 12, 15, 18}) CHECK_FALSE(is_prime_power(q));
  CHECK(is_prime(7));
  CHECK_FALSE(is_prime(9));
}

TEST_CASE("theta examples") {
  const Parameters p = make_parameters(2, 4, 2, 2);
  const Theta t = theta(p, 1, 2, 2);
  CHECK(t.radical_free());
  CHECK(t.rho == -4);
  CHECK(theta(p, 0, 2, 2).rho == 16);
  CHECK(theta(p, 2, 2, 2).rho == 2);
  // theta(0, k, k) = q^{k^2} [n-k, k].
  for (long q : {2, 3, 5}) {
    for (long n = 2; n <= 9; ++n) {
      for (long k = 1; 2 * k <= n; ++k) {
        const Parameters pp = make_parameters(q, n, k, k);
        const Theta t0 = theta(pp, 0, k, k);
        CHECK(t0.radical_free());
        CHECK(t0.rho == Rational(ipow(q, static_cast<unsigned long>(k * k)) * gauss(n - k, k, q)));
      }
    }
  }
  // k < i gives zero.
  const Parameters p6 = make_parameters(2, 6, 3, 2);
  CHECK(theta(p6, 2, 1, 2).is_zero());
  CHECK_THROWS_AS(theta(p6, 4, 3, 3), InvalidParameter);
  CHECK_THROWS_AS(theta(p6, 2, 3, 1), InvalidParameter);
}

TEST_CASE("theta matches the literal formula in 200-bit floats") {
  for (long q : {2, 3, 4, 7}) {
    for (long n = 2; n <= 11; ++n) {
      const Parameters p = make_parameters(q, n, 1, 1);
      for (long i = 0; 2 * i <= n; ++i) {
        for (long l = i; l <= n - i; ++l) {
          for (long k = 0; k <= n; ++k) {
            CAPTURE(q);
            CAPTURE(n);
            CAPTURE(i);
            CAPTURE(k);
            CAPTURE(l);
            const Theta t = theta(p, i, k, l);
            const oracle::Float expect = oracle::theta(q, n, i, k, l);
            const oracle::Float got = to_float(t.rho) * boost::multiprecision::sqrt(to_float(t.num_rad) / to_float(t.den_rad));
            const oracle::Float err = boost::multiprecision::abs(got - expect);
            CHECK(err <= oracle::Float(1e-50) * (1 + boost::multiprecision::abs(expect)));
            // squared() is the exact square.
            CHECK(boost::multiprecision::abs(to_float(t.squared()) - expect * expect) <=
                  oracle::Float(1e-50) * (1 + expect * expect));
          }
        }
      }
    }
  }
}

TEST_CASE("theta symmetry in k and l") {
  for (long q : {2, 3, 4, 5}) {
    for (long n = 2; n <= 12; ++n) {
      const Parameters p = make_parameters(q, n, 1, 1);
      for (long i = 0; 2 * i <= n; ++i) {
        for (long k = i; k <= n - i; ++k) {
          for (long l = i; l <= n - i; ++l) {
            const Theta a = theta(p, i, k, l), b = theta(p, i, l, k);
            // Equal values: same sign and equal squares.
            CHECK(sgn(a.rho) == sgn(b.rho));
            CHECK(a.squared() == b.squared());
          }
        }
      }
    }
  }
}

TEST_CASE("multiplicities") {
  const auto d = multiplicities(make_parameters(2, 4, 2, 2));
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 1);
  CHECK(d[1] == 14);
  CHECK(d[2] == 20);
  for (long q : {2, 3, 4, 5, 7, 8, 9}) {
    for (long n = 2; n <= 14; ++n) {
      const auto dd = multiplicities(make_parameters(q, n, 1, 1));
      Integer sum = 0;
      for (long k = 0; 2 * k <= n; ++k) {
        CHECK(dd[static_cast<std::size_t>(k)] >= 0);
        sum += dd[static_cast<std::size_t>(k)];
        CHECK(sum == gauss(n, k, q));
      }
    }
  }
}

TEST_CASE("ratio of consecutive mixed eigenvalues") {
  for (long q : {2, 3, 4, 5, 7}) {
    for (long n = 4; n <= 14; ++n) {
      for (long k = 2; 2 * k <= n; ++k) {
        for (long l = 2; l <= k; ++l) {
          const Parameters p = make_parameters(q, n, k, l);
          for (long i = 2; i <= l - 1; ++i) {
            const Rational r = theta(p, i + 1, k, l).squared() / theta(p, i, k, l).squared();
            auto Q = [&](long e) { return Rational(ipow(q, static_cast<unsigned long>(e))); };
            const Rational expect = rpow(q, 2 * i - k - l) * (Q(k - i) - 1) * (Q(l - i) - 1) /
                                    ((Q(n - k - i) - 1) * (Q(n - l - i) - 1));
            CHECK(r == expect);
            CHECK(r < 1);
          }
        }
      }
    }
  }
}

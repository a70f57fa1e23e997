#pragma once

#include <string>
#include <vector>

#include "qcross/exactnum.hpp"

namespace qcross {

/// (q, n, k, l) for a pair of cross-intersecting families of k- and
/// l-dimensional subspaces of F_q^n.  Normalized so that k >= l; `swapped`
/// records whether the caller passed k < l.
struct Parameters {
  long q = 2;
  long n = 2;
  long k = 1;
  long l = 1;
  bool swapped = false;
};

/// Validates q >= 2, k, l >= 1, n >= 2k, n >= 2l and normalizes k >= l.
/// Throws InvalidParameter.
Parameters make_parameters(long q, long n, long k, long l);

bool is_prime(long q);
bool is_prime_power(long q);

/// Disjointness eigenvalue on the i-th harmonic component, between the
/// k- and l-layers.  Value = rho * sqrt(num_rad / den_rad).  A half-integer
/// power of q is absorbed into one of the radicands so rho stays rational.
struct Theta {
  long i = 0;
  long k = 0;
  long l = 0;
  Rational rho;
  Integer num_rad;
  Integer den_rad;

  bool is_zero() const { return sgn(rho) == 0 || sgn(num_rad) == 0; }
  /// rho^2 * num_rad / den_rad.
  Rational squared() const;
  /// True when the radical ratio is 1 (then the value is just rho).
  bool radical_free() const { return num_rad == den_rad; }
  double to_double() const;
};

/// Throws InvalidParameter unless 0 <= i <= n/2, i <= l <= n - i, 0 <= k <= n.
Theta theta(const Parameters& params, long i, long k, long l);

/// d_i = [n, i] - [n, i-1] for i = 0..floor(n/2).
std::vector<Integer> multiplicities(const Parameters& params);

}  // namespace qcross

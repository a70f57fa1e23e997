#pragma once

/// Dual certificates for the cross-intersection bound.
///
/// The dual solution is the one-parameter family
///   alpha = beta = sqrt(D)/2,  gamma = b(lambda),
///   A = a(lambda) Wbar_{k,k} + lambda Wbar_{l,l},
/// with D = [n-1,k-1][n-1,l-1].  After block diagonalization the slack
/// matrix S(lambda) is PSD iff 2x2 blocks S_0..S_l and scalars
/// s_{l+1}..s_k are.  Each 2x2 block is tested after a congruence that
/// scales its second coordinate by sqrt(den_rad/num_rad) of the mixed
/// eigenvalue; that leaves every entry in Q(sqrt D).

#include <optional>
#include <vector>

#include "qcross/exactnum.hpp"
#include "qcross/report.hpp"
#include "qcross/spectrum.hpp"

namespace qcross {

struct DualCoefficients {
  Rational lambda;
  QuadraticNumber alpha;
  QuadraticNumber beta;
  QuadraticNumber a_lambda;
  QuadraticNumber b_lambda;
};

/// Congruence-scaled 2x2 block [[p, r], [r, s]].
struct ReducedBlock {
  long i = 0;
  QuadraticNumber p;
  QuadraticNumber r;
  QuadraticNumber s;
  QuadraticNumber det;
  bool psd = false;
};

struct ScalarCondition {
  long i = 0;
  QuadraticNumber value;
  bool nonneg = false;
};

enum class Verdict { feasible, infeasible };

const char* to_string(Verdict v);

/// Certified-feasible lambda and the smallest lambda tried that failed.
struct LambdaBracket {
  Rational feasible;
  Rational infeasible;
};

struct DualCertificate {
  Parameters params;
  bool q_prime_power = false;
  Integer D;
  Integer bound;
  DualCoefficients coefficients;
  std::vector<ReducedBlock> blocks;
  std::vector<ScalarCondition> scalars;
  std::optional<LambdaBracket> lambda_bracket;
  Verdict verdict = Verdict::infeasible;
};

/// D = [n-1,k-1] [n-1,l-1].
Integer dual_radicand(const Parameters& params);

/// a(lambda) and b(lambda) from the defining linear relations.  Both throw
/// InvalidParameter for lambda < 0.
QuadraticNumber coeff_a(const Parameters& params, const Rational& lambda);
QuadraticNumber coeff_b(const Parameters& params, const Rational& lambda);

struct BlockSet {
  std::vector<ReducedBlock> blocks;   // i = 0..l
  std::vector<ScalarCondition> scalars;  // i = l+1..k
};

BlockSet build_blocks(const Parameters& params, const Rational& lambda);

bool psd_check_2x2(const QuadraticNumber& p, const QuadraticNumber& r, const QuadraticNumber& s);
/// Recomputes the determinant from p, r, s; the stored det is not trusted.
bool psd_check_2x2(const ReducedBlock& block);

/// lambda > 0, a(lambda) > 0, all blocks PSD and all scalars >= 0.
bool is_feasible(const Parameters& params, const Rational& lambda);

struct LambdaSearchOptions {
  /// Halving stops after lambda = 2^-floor_exponent.
  unsigned floor_exponent = 64;
  /// Extra bisection steps between the feasible and infeasible ends.
  unsigned refine_bits = 0;
};

struct LambdaSearchResult {
  Rational lambda_star;
  LambdaBracket bracket;
  unsigned halvings = 0;
};

/// Tries lambda = 1, 1/2, 1/4, ... until feasible.  Throws ExhaustedSearch
/// at the floor.
LambdaSearchResult lambda_search(const Parameters& params, const LambdaSearchOptions& options = {});

/// Certificate data at a fixed lambda, with the verdict for that lambda.
DualCertificate evaluate_certificate(const Parameters& params, const Rational& lambda);

struct CertifyOptions {
  /// Unset means automatic search.
  std::optional<Rational> lambda;
  LambdaSearchOptions search;
};

DualCertificate certify(const Parameters& params, const CertifyOptions& options = {});

/// Recomputes the verdict from the stored numbers only (block entries,
/// scalars, lambda, a(lambda), alpha, beta) and checks internal consistency.
Report recheck_certificate(const DualCertificate& cert);

/// Exact checks of the block structure at the given lambda and of the
/// lambda = 0 estimates behind the feasibility argument.
Report structure_checks(const Parameters& params, const Rational& lambda);

}  // namespace qcross

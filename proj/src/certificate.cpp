#include "qcross/certificate.hpp"

#include <sstream>

#include "qcross/errors.hpp"

namespace qcross {

namespace {

Rational half() { return Rational(1, 2); }

Integer qpow(const Parameters& p, long e) { return ipow(p.q, static_cast<unsigned long>(e)); }

void require_nonnegative(const Rational& lambda) {
  if (sgn(lambda) < 0) throw InvalidParameter("lambda must be >= 0, got " + to_string(lambda));
}

std::string describe(const Parameters& p) {
  std::ostringstream os;
  os << "q=" << p.q << " n=" << p.n << " k=" << p.k << " l=" << p.l;
  return os.str();
}

// Diagonal eigenvalue theta_i^{m,m}: the radicals cancel, so it is rational.
Rational diagonal_theta(const Parameters& p, long i, long m) {
  Theta t = theta(p, i, m, m);
  if (t.is_zero()) return 0;
  return t.rho;
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::feasible ? "feasible" : "infeasible"; }

Integer dual_radicand(const Parameters& params) {
  return gauss(params.n - 1, params.k - 1, params.q) * gauss(params.n - 1, params.l - 1, params.q);
}

QuadraticNumber coeff_a(const Parameters& params, const Rational& lambda) {
  require_nonnegative(lambda);
  const long q = params.q, n = params.n, k = params.k, l = params.l;
  const Integer D = dual_radicand(params);
  QuadraticNumber numer(D, Rational(qpow(params, l * l) * (qpow(params, l) - 1) * gauss(n - l, l, q)) * lambda,
                        half() * Rational(qpow(params, l) * (qpow(params, k - l) - 1)));
  const Rational denom(qpow(params, k * k) * (qpow(params, k) - 1) * gauss(n - k, k, q));
  return numer / denom;
}

QuadraticNumber coeff_b(const Parameters& params, const Rational& lambda) {
  require_nonnegative(lambda);
  const long q = params.q, n = params.n, k = params.k, l = params.l;
  const Integer D = dual_radicand(params);
  const Integer A = gauss(n - 1, k - 1, q);
  // sqrt([n-1,l-1] / [n-1,k-1]) = sqrt(D) / [n-1,k-1].
  Rational lambda_term = Rational(qpow(params, l * l) * gauss(n - l, l, q)) * lambda / Rational(A);
  QuadraticNumber numer(D, -half() * Rational(qpow(params, l) * gauss(n - 1, l, q)), -lambda_term);
  const Rational denom(qpow(params, k * l) * gauss(n - k, l, q));
  return numer / denom;
}

bool psd_check_2x2(const QuadraticNumber& p, const QuadraticNumber& r, const QuadraticNumber& s) {
  if (p.sign() < 0 || s.sign() < 0) return false;
  return (p * s - r * r).sign() >= 0;
}

bool psd_check_2x2(const ReducedBlock& block) { return psd_check_2x2(block.p, block.r, block.s); }

BlockSet build_blocks(const Parameters& params, const Rational& lambda) {
  const long q = params.q, n = params.n, k = params.k, l = params.l;
  const Integer D = dual_radicand(params);
  const QuadraticNumber c = QuadraticNumber::radical(D, half());
  const QuadraticNumber a = coeff_a(params, lambda);
  const QuadraticNumber b = coeff_b(params, lambda);

  BlockSet out;
  for (long i = 0; i <= l; ++i) {
    const Theta mixed = theta(params, i, k, l);
    const Rational scale = ratio(mixed.den_rad, mixed.num_rad);  // t_i^2

    ReducedBlock blk;
    blk.i = i;
    blk.p = c - a * diagonal_theta(params, i, k);
    blk.r = -(b * mixed.rho);
    if (i == 0) {
      // -(1/2) sqrt([n,k][n,l]) scaled by sqrt([n,l]/[n,k]).
      blk.r -= QuadraticNumber::rational(D, half() * Rational(gauss(n, l, q)));
    }
    QuadraticNumber lower = c;
    lower -= QuadraticNumber::rational(D, diagonal_theta(params, i, l) * lambda);
    blk.s = lower * Rational(scale);
    blk.det = blk.p * blk.s - blk.r * blk.r;
    blk.psd = psd_check_2x2(blk);
    out.blocks.push_back(std::move(blk));
  }
  for (long i = l + 1; i <= k; ++i) {
    ScalarCondition sc;
    sc.i = i;
    sc.value = c - a * diagonal_theta(params, i, k);
    sc.nonneg = sc.value.sign() >= 0;
    out.scalars.push_back(std::move(sc));
  }
  return out;
}

namespace {

bool verdict_from(const Rational& lambda, const QuadraticNumber& a, const BlockSet& set) {
  if (sgn(lambda) <= 0 || a.sign() <= 0) return false;
  for (const auto& b : set.blocks) {
    if (!b.psd) return false;
  }
  for (const auto& s : set.scalars) {
    if (!s.nonneg) return false;
  }
  return true;
}

}  // namespace

bool is_feasible(const Parameters& params, const Rational& lambda) {
  if (sgn(lambda) <= 0) return false;
  QuadraticNumber a = coeff_a(params, lambda);
  if (a.sign() <= 0) return false;
  return verdict_from(lambda, a, build_blocks(params, lambda));
}

LambdaSearchResult lambda_search(const Parameters& params, const LambdaSearchOptions& options) {
  LambdaSearchResult res;
  Rational lambda = 1;
  std::optional<Rational> failed;
  bool found = false;
  for (unsigned step = 0; step <= options.floor_exponent; ++step) {
    if (is_feasible(params, lambda)) {
      found = true;
      res.halvings = step;
      break;
    }
    failed = lambda;
    lambda /= 2;
  }
  if (!found) {
    throw ExhaustedSearch("no feasible lambda down to 2^-" + std::to_string(options.floor_exponent) +
                          " for " + describe(params));
  }
  Rational lo = lambda;
  Rational hi = failed.value_or(lambda);
  if (failed) {
    for (unsigned bit = 0; bit < options.refine_bits; ++bit) {
      Rational mid = (lo + hi) / 2;
      if (is_feasible(params, mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  res.lambda_star = lo;
  res.bracket = {lo, hi};
  return res;
}

DualCertificate evaluate_certificate(const Parameters& params, const Rational& lambda) {
  require_nonnegative(lambda);
  DualCertificate cert;
  cert.params = params;
  cert.q_prime_power = is_prime_power(params.q);
  cert.D = dual_radicand(params);
  cert.bound = cert.D;
  auto& co = cert.coefficients;
  co.lambda = lambda;
  co.alpha = QuadraticNumber::radical(cert.D, half());
  co.beta = co.alpha;
  co.a_lambda = coeff_a(params, lambda);
  co.b_lambda = coeff_b(params, lambda);
  BlockSet set = build_blocks(params, lambda);
  cert.verdict = verdict_from(lambda, co.a_lambda, set) ? Verdict::feasible : Verdict::infeasible;
  cert.blocks = std::move(set.blocks);
  cert.scalars = std::move(set.scalars);
  return cert;
}

DualCertificate certify(const Parameters& params, const CertifyOptions& options) {
  if (options.lambda) return evaluate_certificate(params, *options.lambda);
  LambdaSearchResult found = lambda_search(params, options.search);
  DualCertificate cert = evaluate_certificate(params, found.lambda_star);
  cert.lambda_bracket = found.bracket;
  return cert;
}

Report recheck_certificate(const DualCertificate& cert) {
  Report rep;
  const auto& co = cert.coefficients;
  const QuadraticNumber half_root = QuadraticNumber::radical(cert.D, half());
  rep.add("alpha = sqrt(D)/2", co.alpha.identical(half_root));
  rep.add("beta = sqrt(D)/2", co.beta.identical(half_root));
  QuadraticNumber total = (co.alpha + co.beta).squared();
  rep.add("(alpha+beta)^2 = bound",
          total.identical(QuadraticNumber::rational(cert.D, Rational(cert.bound))));

  bool all_psd = true;
  for (const auto& b : cert.blocks) {
    const std::string tag = "block " + std::to_string(b.i);
    rep.add(tag + " det = ps - r^2", b.det.identical(b.p * b.s - b.r * b.r));
    const bool psd = psd_check_2x2(b);
    rep.add(tag + " psd flag", psd == b.psd);
    all_psd = all_psd && psd;
  }
  bool all_nonneg = true;
  for (const auto& s : cert.scalars) {
    const bool nn = s.value.sign() >= 0;
    rep.add("scalar " + std::to_string(s.i) + " nonneg flag", nn == s.nonneg);
    all_nonneg = all_nonneg && nn;
  }
  const bool feasible = sgn(co.lambda) > 0 && co.a_lambda.sign() > 0 && all_psd && all_nonneg;
  rep.add("verdict", (feasible ? Verdict::feasible : Verdict::infeasible) == cert.verdict,
          std::string("recomputed ") + to_string(feasible ? Verdict::feasible : Verdict::infeasible));
  return rep;
}

Report structure_checks(const Parameters& params, const Rational& lambda) {
  require_nonnegative(lambda);
  Report rep;
  const long q = params.q, n = params.n, k = params.k, l = params.l;
  const std::string where = " [" + describe(params) + " lambda=" + to_string(lambda) + "]";
  const Integer D = dual_radicand(params);
  const QuadraticNumber c = QuadraticNumber::radical(D, half());
  auto qr = [&](long e) { return rpow(q, e); };
  auto Q = [&](long e) { return Rational(ipow(q, static_cast<unsigned long>(e))); };

  // Rank-one structure of S_0 and S_1.  With the congruence scale t^2, the
  // block is kappa * M for a rank-one M iff det = 0, p m22 t^2 = s m11,
  // r^2 m11 = t^2 p^2 m22 and r carries the sign of -p.
  BlockSet set = build_blocks(params, lambda);
  struct RankOne {
    long i;
    Rational m11, m22;
  };
  const RankOne shapes[] = {
      {0, Q(l) - 1, Q(k) - 1},
      {1, Q(l) * (Q(n - l) - 1), Q(k) * (Q(n - k) - 1)},
  };
  for (const auto& shape : shapes) {
    const ReducedBlock& b = set.blocks.at(static_cast<std::size_t>(shape.i));
    const Theta mixed = theta(params, shape.i, k, l);
    const Rational t2 = ratio(mixed.den_rad, mixed.num_rad);
    const std::string tag = "S_" + std::to_string(shape.i);
    rep.add(tag + " det = 0", b.det.is_zero(), to_string(b.det) + where);
    rep.add(tag + " diagonal ratio matches rank-one matrix",
            b.p * Rational(shape.m22 * t2) == b.s * shape.m11, where);
    rep.add(tag + " off-diagonal magnitude matches rank-one matrix",
            b.r.squared() * shape.m11 == b.p.squared() * Rational(t2 * shape.m22), where);
    const int sp = b.p.sign();
    const int sr = b.r.sign();
    rep.add(tag + " off-diagonal sign matches rank-one matrix", sr == -sp, where);
  }

  // Closed form of |theta_i^{k,k} a(0)| and its bounds.
  const QuadraticNumber a0 = coeff_a(params, 0);
  const Rational lk_ratio = (Q(k - l) - 1) / (Q(k) - 1);
  for (long i = 0; i <= k; ++i) {
    const std::string tag = "|theta_" + std::to_string(i) + "^{k,k} a(0)|";
    const QuadraticNumber direct = (a0 * diagonal_theta(params, i, k)).abs();
    Rational coef = half() * qr(i * (i - 1) / 2 + l - i * k) * lk_ratio *
                    Rational(gauss(n - k - i, k - i, q)) / Rational(gauss(n - k, k, q));
    const QuadraticNumber closed = QuadraticNumber::radical(D, coef);
    rep.add(tag + " closed form", direct == closed, where);
    // direct = x sqrt(D) with x >= 0; the intermediate bound has a
    // half-integer q power, so compare squared coefficients.
    const Rational x = direct.radical_part();
    Rational bound_sq = Rational(1, 4) * rpow(q, 2 * l - i * k) * lk_ratio * lk_ratio;
    rep.add(tag + " <= q^(l-ik/2) estimate", sgn(direct.rational_part()) == 0 && x * x <= bound_sq, where);
    if (i <= 1) {
      rep.add(tag + " < sqrt(D)/2", direct < c, where);
    } else {
      rep.add(tag + " < sqrt(D)/(2q)", direct < c / Rational(q), where);
    }
  }

  if (l >= 2) {
    const QuadraticNumber b0 = coeff_b(params, 0);
    // b(0) is rational.
    const Rational b0r = b0.rational_part();
    const Rational Dr(D);
    for (long i = 2; i <= l - 1; ++i) {
      const Rational lhs = theta(params, i + 1, k, l).squared() / theta(params, i, k, l).squared();
      const Rational rhs = qr(2 * i - k - l) * (Q(k - i) - 1) * (Q(l - i) - 1) /
                           ((Q(n - k - i) - 1) * (Q(n - l - i) - 1));
      const std::string tag = "theta ratio i=" + std::to_string(i);
      rep.add(tag + " closed form", lhs == rhs, where);
      rep.add(tag + " < 1", lhs < 1, where);
    }
    const Rational t2b = theta(params, 2, k, l).squared() * b0r * b0r;
    const Rational closed = Rational(1, 4) * qr(2 - 2 * k) * (Q(k - 1) - 1) / (Q(n - k - 1) - 1) *
                            (Q(l - 1) - 1) / (Q(n - l - 1) - 1) * (Q(n - l) - 1) / (Q(n - k) - 1) * Dr;
    const Rational step1 = Rational(1, 4) * qr(2 - 2 * k) * (Q(n - l) - 1) / (Q(n - k) - 1) * Dr;
    const Rational step2 = Rational(1, 4) * qr((2 - 2 * k) + (k - l + 1)) * Dr;
    const Rational last = Dr / Rational(4 * q);
    rep.add("(theta_2 b(0))^2 closed form", t2b == closed, where);
    rep.add("(theta_2 b(0))^2 chain step 1 (<=)", closed <= step1, where);
    rep.add("(theta_2 b(0))^2 chain step 2 (<)", step1 < step2, where);
    rep.add("(theta_2 b(0))^2 chain step 3 (<= D/(4q))", step2 <= last, where);
    rep.add("(theta_2 b(0))^2 < D/(4q)", t2b < last, where);

    const BlockSet at_zero = build_blocks(params, 0);
    for (long i = 2; i <= l; ++i) {
      const std::string tag = "i=" + std::to_string(i);
      const Rational tib = theta(params, i, k, l).squared() * b0r * b0r;
      rep.add("(theta_" + std::to_string(i) + " b(0))^2 <= (theta_2 b(0))^2", tib <= t2b, where);
      const QuadraticNumber lhs = c * (c - a0 * diagonal_theta(params, i, k));
      rep.add(tag + " diagonal product > (1/4)(1-1/q)D",
              lhs > QuadraticNumber::rational(D, Rational(1, 4) * (1 - Rational(1, q)) * Dr), where);
      rep.add(tag + " diagonal product > (theta_i b(0))^2", lhs > QuadraticNumber::rational(D, tib), where);
      rep.add("det S_" + std::to_string(i) + "(0) > 0",
              at_zero.blocks.at(static_cast<std::size_t>(i)).det.sign() > 0, where);
    }
  }
  return rep;
}

}  // namespace qcross

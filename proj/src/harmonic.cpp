#include "qcross/harmonic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "qcross/errors.hpp"
#include "qcross/spectrum.hpp"

namespace qcross {

namespace {

using IntRow = std::vector<Integer>;

// Scales a rational vector to the primitive integer vector on its ray.
void make_primitive(std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) {
    if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  }
  Integer g = 0;
  for (auto& x : v) {
    x *= l;
    if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

std::string tag(const std::string& what, long i, long k, long l = -1) {
  std::string s = what + " i=" + std::to_string(i) + " k=" + std::to_string(k);
  if (l >= 0) s += " l=" + std::to_string(l);
  return s;
}

Rational signed_qpow(long q, long exponent, bool negative) {
  Rational r = rpow(q, exponent);
  return negative ? Rational(-r) : r;
}

}  // namespace

RationalMatrix nullspace(const RationalMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  // Clear denominators row by row.
  std::vector<IntRow> e(rows, IntRow(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    Integer l = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      Rational scaled = m(r, c) * Rational(l);
      e[r][c] = scaled.get_num();
    }
  }

  // Bareiss fraction-free elimination to echelon form.
  std::vector<std::size_t> pivot_cols;
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t p = rank;
    while (p < rows && sgn(e[p][col]) == 0) ++p;
    if (p == rows) continue;
    std::swap(e[p], e[rank]);
    const Integer piv = e[rank][col];
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Integer lead = e[r][col];
      for (std::size_t c = col + 1; c < cols; ++c) {
        Integer v = piv * e[r][c] - lead * e[rank][c];
        mpz_divexact(e[r][c].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      e[r][col] = 0;
    }
    prev = piv;
    pivot_cols.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!is_pivot[c]) free_cols.push_back(c);
  }

  RationalMatrix basis(cols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    std::vector<Rational> x(cols);
    x[free_cols[f]] = 1;
    for (std::size_t r = rank; r-- > 0;) {
      const std::size_t pc = pivot_cols[r];
      Rational sum = 0;
      for (std::size_t c = pc + 1; c < cols; ++c) {
        if (sgn(e[r][c]) != 0 && sgn(x[c]) != 0) sum += Rational(e[r][c]) * x[c];
      }
      x[pc] = -sum / Rational(e[r][pc]);
    }
    make_primitive(x);
    for (std::size_t c = 0; c < cols; ++c) basis(c, f) = x[c];
  }
  return basis;
}

HarmonicBasis harmonic_basis(const IncidenceAlgebra& alg, long i) {
  if (i < 0 || 2 * i > alg.n()) {
    throw InvalidParameter("harmonic_basis: need 0 <= i <= n/2, got i=" + std::to_string(i));
  }
  HarmonicBasis hb;
  hb.i = i;
  if (i == 0) {
    hb.vectors = RationalMatrix(1, 1);
    hb.vectors(0, 0) = 1;
  } else {
    hb.vectors = nullspace(alg.W(i - 1, i));
  }
  return hb;
}

Report verify_lemmas(const IncidenceAlgebra& alg) {
  const long n = alg.n();
  const long q = alg.q();
  const long top = n / 2;
  Parameters shape{q, n, 1, 1, false};
  const std::vector<Integer> d = multiplicities(shape);
  Report rep;

  std::vector<HarmonicBasis> bases;
  // images[i][k] = W_{k,i} U_i.
  std::vector<std::vector<RationalMatrix>> images;
  for (long i = 0; i <= top; ++i) {
    bases.push_back(harmonic_basis(alg, i));
    const HarmonicBasis& hb = bases.back();
    rep.add("dim U_" + std::to_string(i) + " = d_i", Integer(hb.size()) == d[static_cast<std::size_t>(i)],
            "found " + std::to_string(hb.size()) + ", expected " + d[static_cast<std::size_t>(i)].get_str());
    if (i >= 1) rep.add("W_{i-1,i} U_i = 0 i=" + std::to_string(i), (alg.W(i - 1, i) * hb.vectors).is_zero());
    std::vector<RationalMatrix> row;
    for (long k = 0; k <= n; ++k) row.push_back(alg.W(k, i) * hb.vectors);
    images.push_back(std::move(row));
  }

  for (long i = 0; i <= top; ++i) {
    const RationalMatrix& u = bases[static_cast<std::size_t>(i)].vectors;
    for (long k = 0; k <= n; ++k) {
      const RationalMatrix& img = images[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (k < i || k > n - i) rep.add(tag("W_{k,i} u = 0 outside i..n-i", i, k), img.is_zero());
      const Rational coef = signed_qpow(q, i * (i - 1) / 2, i % 2 != 0);
      rep.add(tag("Wbar_{k,i} u = (-1)^i q^binom(i,2) W_{k,i} u", i, k),
              alg.Wbar(k, i) * u == coef * img);
    }
  }

  for (long i = 0; i <= top; ++i) {
    for (long j = 0; j <= top; ++j) {
      for (long k = 0; k <= n; ++k) {
        const RationalMatrix lhs = images[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].transpose() *
                                   images[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        const std::string name = "inner product i=" + std::to_string(i) + " j=" + std::to_string(j) +
                                 " k=" + std::to_string(k);
        if (i != j) {
          rep.add(name, lhs.is_zero());
        } else {
          const RationalMatrix& u = bases[static_cast<std::size_t>(i)].vectors;
          const Rational coef = rpow(q, i * (k - i)) * Rational(gauss(n - 2 * i, k - i, q));
          rep.add(name, lhs == coef * (u.transpose() * u));
        }
      }
    }
  }

  for (long i = 0; i <= top; ++i) {
    for (long k = 0; k <= n; ++k) {
      for (long l = 0; l <= n; ++l) {
        const auto& src = images[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
        const auto& dst = images[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        const Rational coef = signed_qpow(q, i * (i - 1) / 2 + k * (l - i), i % 2 != 0) *
                              Rational(gauss(n - k - i, l - i, q));
        rep.add(tag("Wbar_{k,l} W_{l,i} u eigen-relation", i, k, l), alg.Wbar(k, l) * src == coef * dst);
      }
    }
  }

  // J_{k,l} v = (1^T v) 1_k, so J acting on W_{l,i} u only sees column sums.
  for (long i = 1; i <= top; ++i) {
    for (long l = 0; l <= n; ++l) {
      const auto& img = images[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
      bool zero = true;
      for (std::size_t c = 0; c < img.cols() && zero; ++c) {
        Rational s = 0;
        for (std::size_t r = 0; r < img.rows(); ++r) s += img(r, c);
        zero = sgn(s) == 0;
      }
      rep.add(tag("J_{k,l} W_{l,i} u = 0", i, 0, l), zero);
    }
  }
  for (long k = 0; k <= n; ++k) {
    for (long l = 0; l <= n; ++l) {
      RationalMatrix ones(alg.lattice().layer_size(l), 1);
      for (std::size_t r = 0; r < ones.rows(); ++r) ones(r, 0) = 1;
      RationalMatrix expect(alg.lattice().layer_size(k), 1);
      for (std::size_t r = 0; r < expect.rows(); ++r) expect(r, 0) = Rational(gauss(n, l, q));
      rep.add(tag("J_{k,l} 1 = [n,l] 1", 0, k, l), alg.J(k, l) * ones == expect);
    }
  }
  return rep;
}

SpectrumCrosscheck spectrum_crosscheck(const IncidenceAlgebra& alg, long k, double rel_tol) {
  const long n = alg.n();
  const long q = alg.q();
  if (k < 0 || k > n) throw InvalidParameter("spectrum_crosscheck: k out of range");
  SpectrumCrosscheck out;

  const RationalMatrix& wbar = alg.Wbar(k, k);
  const auto size = static_cast<Eigen::Index>(wbar.rows());
  Eigen::MatrixXd dense(size, size);
  Rational trace = 0;
  for (Eigen::Index r = 0; r < size; ++r) {
    for (Eigen::Index c = 0; c < size; ++c) {
      dense(r, c) = wbar(static_cast<std::size_t>(r), static_cast<std::size_t>(c)).get_d();
    }
    trace += wbar(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense, Eigen::EigenvaluesOnly);
  for (Eigen::Index j = 0; j < size; ++j) out.float_eigenvalues.push_back(solver.eigenvalues()(j));
  std::sort(out.float_eigenvalues.begin(), out.float_eigenvalues.end());

  Parameters shape{q, n, k, k, false};
  const std::vector<Integer> d = multiplicities(shape);
  Rational weighted = 0;
  Integer count = 0;
  for (long i = 0; i <= std::min(k, n - k); ++i) {
    const Theta t = theta(shape, i, k, k);
    const Integer& mult = d[static_cast<std::size_t>(i)];
    weighted += t.rho * Rational(mult);
    count += mult;
    for (unsigned long r = 0; r < mult.get_ui(); ++r) out.float_expected.push_back(t.rho.get_d());
  }
  std::sort(out.float_expected.begin(), out.float_expected.end());

  out.report.add("total multiplicity = [n,k]", count == gauss(n, k, q),
                 count.get_str() + " vs " + gauss(n, k, q).get_str());
  out.report.add("sum d_i theta_i = trace Wbar_{k,k}", weighted == trace,
                 to_string(weighted) + " vs " + to_string(trace));

  bool matched = out.float_expected.size() == out.float_eigenvalues.size();
  if (matched) {
    for (std::size_t j = 0; j < out.float_expected.size(); ++j) {
      const double x = out.float_expected[j];
      const double err = std::abs(out.float_eigenvalues[j] - x) / std::max(1.0, std::abs(x));
      out.float_max_relative_error = std::max(out.float_max_relative_error, err);
    }
    matched = out.float_max_relative_error <= rel_tol;
  }
  out.report.add("eigenvalues match closed form", matched,
                 "max relative error " + std::to_string(out.float_max_relative_error));
  return out;
}

}  // namespace qcross

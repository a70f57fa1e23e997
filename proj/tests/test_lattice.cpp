#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qcross/errors.hpp"
#include "qcross/harmonic.hpp"
#include "qcross/incidence.hpp"
#include "qcross/spectrum.hpp"
#include "qcross/subspace.hpp"
#include "support.hpp"

using namespace qcross;

namespace {

void require_ok(const Report& rep) {
  for (const auto& c : rep.checks()) CHECK_MESSAGE(c.passed, (c.name + " " + c.detail));
  CHECK(rep.size() > 0);
}

}  // namespace

TEST_CASE("prime field") {
  const PrimeField f(7);
  for (PrimeField::Element a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.neg(3) == 4);
  std::set<PrimeField::Element> powers;
  PrimeField::Element g = 1;
  for (int e = 0; e < 6; ++e) {
    powers.insert(g);
    g = f.mul(g, f.primitive_root());
  }
  CHECK(powers.size() == 6);
  CHECK_THROWS_AS(PrimeField(4), Unsupported);
}

TEST_CASE("enumeration counts and ordering") {
  CHECK(enumerate(4, 2, 2).size() == 35);
  CHECK(enumerate(3, 1, 3).size() == 13);
  CHECK(enumerate(5, 0, 2).size() == 1);
  CHECK(enumerate(5, 0, 2)[0].dim() == 0);
  CHECK_THROWS_AS(enumerate(4, 2, 4), Unsupported);
  CHECK_THROWS_AS(enumerate(4, 5, 2), InvalidParameter);
  for (long q : {2, 3, 5}) {
    for (long n = 0; n <= (q == 2 ? 6 : 4); ++n) {
      for (long k = 0; k <= n; ++k) {
        const auto list = enumerate(n, k, q);
        CHECK(Integer(static_cast<unsigned long>(list.size())) == testing_support::to_integer(oracle::gauss(n, k, q)));
        std::set<std::string> keys;
        for (const auto& s : list) {
          keys.insert(s.key());
          CHECK(s.dim() == k);
          // Already canonical: reducing again changes nothing.
          CHECK(Subspace(PrimeField(q), s.basis()) == s);
        }
        CHECK(keys.size() == list.size());
        for (std::size_t j = 1; j < list.size(); ++j) {
          const auto a = list[j - 1].pivots(), b = list[j].pivots();
          CHECK((a < b || (a == b && list[j - 1].basis().data < list[j].basis().data)));
        }
      }
    }
  }
}

TEST_CASE("lattice index round trip") {
  const SubspaceLattice lat(4, 3);
  std::size_t total = 0;
  for (long k = 0; k <= 4; ++k) {
    CHECK(lat.offset(k) == total);
    for (std::size_t j = 0; j < lat.layer_size(k); ++j) CHECK(lat.index_of(lat.layer(k)[j]) == j);
    total += lat.layer_size(k);
  }
  CHECK(lat.size() == total);
  const SubspaceLattice other(4, 2);
  CHECK_THROWS_AS(lat.index_of(other.layer(1)[0]), InvalidParameter);
}

TEST_CASE("intersection dimension") {
  const PrimeField f2(2);
  const Subspace e12 = coordinate_subspace(f2, 4, {0, 1});
  const Subspace e23 = coordinate_subspace(f2, 4, {1, 2});
  const Subspace e34 = coordinate_subspace(f2, 4, {2, 3});
  CHECK(intersect_dim(e12, e23) == 1);
  CHECK(intersect_dim(e12, e34) == 0);
  CHECK(intersect_dim(e12, e12) == 2);
  const auto lines = enumerate(2, 1, 2);
  REQUIRE(lines.size() == 3);
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) CHECK(intersect_dim(lines[a], lines[b]) == (a == b ? 1 : 0));
  }
  CHECK(contains(e12, coordinate_subspace(f2, 4, {1})));
  CHECK_FALSE(contains(e12, coordinate_subspace(f2, 4, {2})));
  CHECK_THROWS_AS(intersect_dim(e12, coordinate_subspace(f2, 3, {0})), InvalidParameter);
}

TEST_CASE("group action preserves dimension and incidence") {
  const SubspaceLattice lat(4, 3);
  const PrimeField& f = lat.field();
  FqMatrix g(4, 4);
  // An invertible upper-triangular matrix with a non-trivial diagonal.
  for (long i = 0; i < 4; ++i) {
    g.at(i, i) = (i == 0) ? 2 : 1;
    for (long j = i + 1; j < 4; ++j) g.at(i, j) = static_cast<PrimeField::Element>((i + 2 * j) % 3);
  }
  const auto& l1 = lat.layer(1);
  const auto& l2 = lat.layer(2);
  for (std::size_t a = 0; a < l2.size(); a += 7) {
    const Subspace x = transform(f, l2[a], g);
    CHECK(x.dim() == 2);
    for (std::size_t b = 0; b < l1.size(); ++b) {
      CHECK(contains(l2[a], l1[b]) == contains(x, transform(f, l1[b], g)));
    }
  }
}

TEST_CASE("incidence blocks: row sums and basic shapes") {
  for (long q : {2, 3}) {
    const long n = 4;
    const SubspaceLattice lat(n, q);
    const IncidenceAlgebra alg(lat);
    for (long k = 0; k <= n; ++k) {
      CHECK(alg.W(k, k) == RationalMatrix::identity(lat.layer_size(k)));
      for (long l = 0; l <= n; ++l) {
        const RationalMatrix& w = alg.W(k, l);
        const RationalMatrix& wb = alg.Wbar(k, l);
        for (std::size_t r = 0; r < w.rows(); ++r) {
          Rational sw = 0, sb = 0;
          for (std::size_t c = 0; c < w.cols(); ++c) {
            sw += w(r, c);
            sb += wb(r, c);
          }
          if (l <= k) CHECK(sw == Rational(gauss(k, l, q)));
          CHECK(sb == Rational(ipow(q, static_cast<unsigned long>(k * l)) * gauss(n - k, l, q)));
        }
      }
      CHECK(alg.Wbar(k, 0) == alg.W(k, 0));
    }
  }
}

TEST_CASE("incidence identities: worked product") {
  const SubspaceLattice lat(4, 2);
  const IncidenceAlgebra alg(lat);
  CHECK(alg.W(2, 1) * alg.W(1, 0) == Rational(3) * alg.W(2, 0));
}

TEST_CASE("incidence identities and harmonic lemmas on small lattices") {
  for (long n = 2; n <= 4; ++n) {
    for (long q : {2, 3}) {
      CAPTURE(n);
      CAPTURE(q);
      const SubspaceLattice lat(n, q);
      const IncidenceAlgebra alg(lat);
      require_ok(verify_identities(alg, n));
      require_ok(verify_lemmas(alg));
    }
  }
}

TEST_CASE("harmonic bases") {
  const SubspaceLattice lat(4, 2);
  const IncidenceAlgebra alg(lat);
  CHECK(harmonic_basis(alg, 0).size() == 1);
  CHECK(harmonic_basis(alg, 1).size() == 14);
  const HarmonicBasis u2 = harmonic_basis(alg, 2);
  CHECK(u2.size() == 20);
  CHECK((alg.W(3, 2) * u2.vectors).is_zero());
  // Eigenvalue -4 of Wbar_{2,2} on W_{2,1} U_1.
  const RationalMatrix img = alg.W(2, 1) * harmonic_basis(alg, 1).vectors;
  CHECK(alg.Wbar(2, 2) * img == Rational(-4) * img);
  CHECK_THROWS_AS(harmonic_basis(alg, 3), InvalidParameter);
}

TEST_CASE("nullspace of a small rational matrix") {
  RationalMatrix m(2, 4);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(0, 3) = Rational(1, 2);
  m(1, 1) = 3;
  m(1, 2) = -1;
  const RationalMatrix ker = nullspace(m);
  CHECK(ker.cols() == 2);
  CHECK((m * ker).is_zero());
  for (std::size_t c = 0; c < ker.cols(); ++c) {
    for (std::size_t r = 0; r < ker.rows(); ++r) CHECK(ker(r, c).get_den() == 1);
  }
}

TEST_CASE("dense spectrum cross-check") {
  const SubspaceLattice lat(4, 2);
  const IncidenceAlgebra alg(lat);
  const SpectrumCrosscheck k2 = spectrum_crosscheck(alg, 2);
  require_ok(k2.report);
  REQUIRE(k2.float_eigenvalues.size() == 35);
  int c16 = 0, cm4 = 0, c2 = 0;
  for (double e : k2.float_eigenvalues) {
    c16 += std::abs(e - 16) < 1e-8 * 16;
    cm4 += std::abs(e + 4) < 1e-8 * 4;
    c2 += std::abs(e - 2) < 1e-8 * 2;
  }
  CHECK(c16 == 1);
  CHECK(cm4 == 14);
  CHECK(c2 == 20);
  const SpectrumCrosscheck k1 = spectrum_crosscheck(alg, 1);
  require_ok(k1.report);
  CHECK(std::count_if(k1.float_eigenvalues.begin(), k1.float_eigenvalues.end(),
                      [](double e) { return std::abs(e + 1) < 1e-8; }) == 14);
  const SubspaceLattice lat3(4, 3);
  const IncidenceAlgebra alg3(lat3);
  require_ok(spectrum_crosscheck(alg3, 2).report);
}

TEST_CASE("size guard") {
  const SubspaceLattice lat(4, 2);
  CHECK_THROWS_AS(IncidenceAlgebra(lat, 100), SizeGuardExceeded);
  try {
    IncidenceAlgebra alg(lat, 100);
  } catch (const SizeGuardExceeded& e) {
    CHECK(e.estimate() == doctest::Approx(67.0 * 67.0));
  }
}

TEST_CASE("duplicated layer placement") {
  const SubspaceLattice lat(2, 2);
  const IncidenceAlgebra alg(lat);
  const RationalMatrix full = alg.build_full(IncidenceKind::Wbar, {1, false}, {1, true});
  CHECK(full.rows() == lat.size() + 3);
  // Lines of F_2^2 on the original layer vs their copy: disjoint off the diagonal.
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 0; b < 3; ++b) CHECK(full(lat.offset(1) + a, lat.size() + b) == (a == b ? 0 : 1));
  }
  CHECK(alg.build_full(IncidenceKind::I, {1, false}, {1, false})(lat.offset(1), lat.offset(1)) == 1);
}

TEST_CASE("triplet export") {
  const SubspaceLattice lat(2, 2);
  const IncidenceAlgebra alg(lat);
  std::ostringstream os;
  write_triplets(os, alg, IncidenceKind::Wbar, 1, 1);
  CHECK(os.str() == "2 1 1 2 Wbar 3 3\n0 1 1\n0 2 1\n1 0 1\n1 2 1\n2 0 1\n2 1 1\n");
}

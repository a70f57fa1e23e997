#pragma once

/// Families of subspaces, the rank-one primal solution they induce, and an
/// exhaustive maximizer of |F||G| used as an oracle on tiny instances.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "qcross/certificate.hpp"
#include "qcross/exactnum.hpp"
#include "qcross/report.hpp"
#include "qcross/subspace.hpp"

namespace qcross {

/// k-dimensional subspaces given by sorted canonical indices into L_k of a
/// SubspaceLattice(n, q).
struct Family {
  long q = 2;
  long n = 0;
  long k = 0;
  std::vector<std::size_t> members;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
};

/// Builds a family from arbitrary indices (sorted, deduplicated).
Family make_family(const SubspaceLattice& lattice, long k, std::vector<std::size_t> members);

/// All k-subspaces containing the 1-dimensional z.
Family point_star(const SubspaceLattice& lattice, const Subspace& z, long k);

/// All k-subspaces inside the (2k-1)-dimensional z; requires n = 2k.
Family hyperplane_family(const SubspaceLattice& lattice, const Subspace& z, long k);

bool is_cross_intersecting(const SubspaceLattice& lattice, const Family& f, const Family& g);
bool is_intersecting(const SubspaceLattice& lattice, const Family& f);

/// X = (phi/|phi| + psi/|psi|)(phi/|phi| + psi/|psi|)^T on the index set
/// L_k u L_l (two copies of the layer when k = l), in Q(sqrt(|F||G|)).
/// Only the block structure is stored: F-F entries 1/|F|, G-G entries
/// 1/|G|, cross entries 1/sqrt(|F||G|), zero elsewhere.
class PrimalSolution {
 public:
  enum class Side { F, G };

  PrimalSolution(Family f, Family g);

  const Family& f() const noexcept { return f_; }
  const Family& g() const noexcept { return g_; }
  const Integer& radicand() const noexcept { return product_; }

  /// Entry of X at a (row, column) pair of members from the given sides.
  QuadraticNumber entry(Side a, Side b) const;

 private:
  Family f_;
  Family g_;
  Integer product_;
};

/// Constraint, objective, nonnegativity and weak-duality checks for the
/// primal solution of (F, G).  F and G must be nonempty, cross-intersecting
/// and live on layers {params.k, params.l}.  Throws InvalidParameter when
/// the preconditions fail.
Report primal_check(const SubspaceLattice& lattice, const Family& f, const Family& g, const Parameters& params);

/// Complementary slackness for an extremal pair (|F||G| = D) against a
/// feasible certificate: both families intersecting, A . X = 0 and
/// S . X = 0, evaluated exactly in Q(sqrt D).  Throws InvalidParameter when
/// |F||G| != D or the certificate is not feasible.
Report slackness_check(const SubspaceLattice& lattice, const Family& f, const Family& g,
                       const DualCertificate& cert);

struct SearchResult {
  std::uint64_t best_product = 0;
  Family f;
  Family g;
  std::uint64_t nodes_explored = 0;
  std::size_t orbit_count = 0;
  bool exact = false;
};

/// Orbit representatives (smallest canonical index in each orbit) of L_k
/// under GL(n, q).
std::vector<std::size_t> orbit_representatives(const SubspaceLattice& lattice, long k);

/// Maximizes |F||G| over cross-intersecting F in L_k, G in L_l by
/// branch-and-bound on F (G is forced).  Requires [n,k] + [n,l] <= 80.
/// `exact` is false when the time budget ran out first.
SearchResult brute_force_max(const SubspaceLattice& lattice, long k, long l, double budget_seconds);

/// Random nonempty cross-intersecting pair: F is a random subfamily of L_k,
/// G a random nonempty subfamily of the l-spaces meeting all of F.
std::pair<Family, Family> sample_cross_intersecting(const SubspaceLattice& lattice, long k, long l,
                                                    std::mt19937_64& rng);

/// Random subfamilies of the point stars through a random z, perturbed by
/// adding one random k-space outside the star to F and dropping from G
/// whatever it misses.
std::pair<Family, Family> sample_perturbed_stars(const SubspaceLattice& lattice, long k, long l,
                                                 std::mt19937_64& rng);

}  // namespace qcross

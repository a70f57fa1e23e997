#pragma once

/// Harmonic components U_i = ker W_{i-1,i} on L_i and exact checks of how
/// the incidence and disjointness matrices act on them.

#include <vector>

#include "qcross/exactnum.hpp"
#include "qcross/incidence.hpp"
#include "qcross/report.hpp"

namespace qcross {

/// Basis of U_i stored as the columns of a |L_i| x d_i matrix.  Columns
/// are primitive integer vectors (not normalized).
struct HarmonicBasis {
  long i = 0;
  RationalMatrix vectors;

  std::size_t size() const { return vectors.cols(); }
};

/// Basis of the right kernel, by fraction-free elimination.  Columns are
/// primitive integer vectors, one per free column of the echelon form.
RationalMatrix nullspace(const RationalMatrix& m);

/// U_0 is spanned by the single vector (1); W_{-1,0} is taken as 0.
/// Throws InvalidParameter unless 0 <= i <= n/2.
HarmonicBasis harmonic_basis(const IncidenceAlgebra& algebra, long i);

/// Checks, on every basis vector of every U_i, the vanishing and
/// disjointness relations, the inner-product relation, the eigenvector
/// relation for Wbar_{k,l} W_{l,i} u, and the all-ones relations for J.
/// Everything is done on unnormalized vectors W_{k,i} u, so it is exact.
Report verify_lemmas(const IncidenceAlgebra& algebra);

/// Floating-point eigenvalues of Wbar_{k,k} against the closed-form
/// spectrum {theta_i^{k,k} with multiplicity d_i}.
struct SpectrumCrosscheck {
  Report report;
  std::vector<double> float_eigenvalues;  // ascending
  std::vector<double> float_expected;     // ascending, with multiplicity
  double float_max_relative_error = 0;
};

SpectrumCrosscheck spectrum_crosscheck(const IncidenceAlgebra& algebra, long k, double rel_tol = 1e-8);

}  // namespace qcross

#pragma once

/// Dense exact incidence matrices between layers of the subspace lattice
/// and exact verification of the product identities they satisfy.

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "qcross/exactnum.hpp"
#include "qcross/report.hpp"
#include "qcross/subspace.hpp"

namespace qcross {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalMatrix transpose() const;
  bool is_zero() const;
  /// First (row, col) where the matrices differ; nullopt when equal.
  /// Shapes must agree.
  std::optional<std::pair<std::size_t, std::size_t>> first_difference(const RationalMatrix& other) const;

  RationalMatrix& operator+=(const RationalMatrix& other);
  RationalMatrix& operator*=(const Rational& s);
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator*(const Rational& s, RationalMatrix m) { return m *= s; }
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && !a.first_difference(b);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

enum class IncidenceKind { W, Wbar, I, J };

const char* to_string(IncidenceKind kind);

/// A layer of the index set; `copy` selects the duplicate of L_dim used
/// when the two families live on the same layer.
struct LayerRef {
  long dim = 0;
  bool copy = false;
};

/// Entry budget for dense work, from QCROSS_MAX_ENTRIES or 5e7.
std::size_t default_entry_guard();

/// Block incidence matrices W_{k,l}, Wbar_{k,l}, I_k, J_{k,l} over a fixed
/// lattice, restricted to rows L_k and columns L_l.  W and Wbar blocks are
/// built on first use and cached; not safe for concurrent first use.
class IncidenceAlgebra {
 public:
  /// Throws SizeGuardExceeded when |L|^2 exceeds the guard.
  explicit IncidenceAlgebra(const SubspaceLattice& lattice, std::size_t entry_guard = default_entry_guard());

  const SubspaceLattice& lattice() const noexcept { return lattice_; }
  long n() const noexcept { return lattice_.n(); }
  long q() const noexcept { return lattice_.q(); }

  /// dim(x cap y) for x in L_k, y in L_l.
  long meet_dim(long k, std::size_t x, long l, std::size_t y) const;

  const RationalMatrix& W(long k, long l) const;
  const RationalMatrix& Wbar(long k, long l) const;
  RationalMatrix I(long k) const;
  RationalMatrix J(long k, long l) const;
  RationalMatrix block(IncidenceKind kind, long k, long l) const;

  /// The block placed inside the full index set L (or L plus a copy of one
  /// layer when either ref has copy = true).
  RationalMatrix build_full(IncidenceKind kind, LayerRef rows, LayerRef cols) const;
  /// Size of the full index set for build_full.
  std::size_t full_size(bool with_copy_of, long copied_dim) const;

 private:
  const std::vector<unsigned char>& meet_table(long k, long l) const;

  const SubspaceLattice& lattice_;
  mutable std::map<std::pair<long, long>, std::vector<unsigned char>> meet_;
  mutable std::map<std::pair<long, long>, RationalMatrix> w_;
  mutable std::map<std::pair<long, long>, RationalMatrix> wbar_;
};

/// Checks the incidence product identities for every index triple with
/// all dimensions <= kmax, plus transpose symmetry and I_k = W_{k,k}.
Report verify_identities(const IncidenceAlgebra& algebra, long kmax);

/// Sparse triplet export: header "n k l q kind rows cols", then one
/// "row col value" line per nonzero entry.
void write_triplets(std::ostream& out, const IncidenceAlgebra& algebra, IncidenceKind kind, long k, long l);

}  // namespace qcross

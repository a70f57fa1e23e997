#pragma once

/// Subspaces of F_q^n (q prime) in reduced row echelon form, and the
/// canonically ordered lattice of all of them.

#include <cstddef>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcross {

/// Arithmetic in F_q for prime q.
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(long q);

  long order() const noexcept { return q_; }
  Element add(Element a, Element b) const { return static_cast<Element>((a + b) % q_); }
  Element sub(Element a, Element b) const { return static_cast<Element>((a + q_ - b) % q_); }
  Element mul(Element a, Element b) const {
    return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % static_cast<std::uint64_t>(q_));
  }
  Element neg(Element a) const { return a == 0 ? 0 : static_cast<Element>(q_ - a); }
  /// Throws std::domain_error for zero.
  Element inv(Element a) const;
  /// A generator of the multiplicative group.
  Element primitive_root() const { return primitive_root_; }

 private:
  long q_;
  std::vector<Element> inverse_;
  Element primitive_root_ = 1;
};

/// Row-major matrix over F_q used for bases and group elements.
struct FqMatrix {
  long rows = 0;
  long cols = 0;
  std::vector<PrimeField::Element> data;

  FqMatrix() = default;
  FqMatrix(long r, long c) : rows(r), cols(c), data(static_cast<std::size_t>(r * c), 0) {}

  PrimeField::Element& at(long r, long c) { return data[static_cast<std::size_t>(r * cols + c)]; }
  PrimeField::Element at(long r, long c) const { return data[static_cast<std::size_t>(r * cols + c)]; }
};

/// Brings m to reduced row echelon form in place (zero rows at the bottom)
/// and returns the rank.
long row_reduce(const PrimeField& field, FqMatrix& m);

/// A subspace given by its unique RREF basis (dim x n, leading ones, zeros
/// above and below each pivot).
class Subspace {
 public:
  /// Reduces the given spanning rows; the dimension is their rank.
  Subspace(const PrimeField& field, FqMatrix spanning_rows);

  long ambient_dim() const noexcept { return basis_.cols; }
  long dim() const noexcept { return basis_.rows; }
  long field_order() const noexcept { return q_; }
  const FqMatrix& basis() const noexcept { return basis_; }
  std::vector<long> pivots() const;
  /// Canonical byte key, equal iff the subspaces are equal.
  std::string key() const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.q_ == b.q_ && a.basis_.cols == b.basis_.cols && a.basis_.rows == b.basis_.rows &&
           a.basis_.data == b.basis_.data;
  }

 private:
  long q_;
  FqMatrix basis_;
};

/// span{e_c : c in coords} in F_q^n (coordinates are 0-based).
Subspace coordinate_subspace(const PrimeField& field, long n, const std::vector<long>& coords);

/// All k-dimensional subspaces in lexicographic order of (pivot-column set,
/// row-major entries).  Throws Unsupported for non-prime q and
/// InvalidParameter for k outside 0..n.
std::vector<Subspace> enumerate(long n, long k, long q);

/// dim x + dim y - rank of the stacked bases.  Throws InvalidParameter on
/// mismatched ambient spaces.
long intersect_dim(const Subspace& x, const Subspace& y);

/// True iff small is contained in big.
bool contains(const Subspace& big, const Subspace& small);

/// Image of x under the right action v -> v g of an invertible n x n matrix.
Subspace transform(const PrimeField& field, const Subspace& x, const FqMatrix& g);

/// Every subspace of F_q^n, grouped into layers L_0..L_n with canonical
/// indices inside each layer.
class SubspaceLattice {
 public:
  SubspaceLattice(long n, long q);

  long n() const noexcept { return n_; }
  long q() const noexcept { return q_; }
  const PrimeField& field() const noexcept { return field_; }

  const std::vector<Subspace>& layer(long k) const;
  std::size_t layer_size(long k) const { return layer(k).size(); }
  /// Total number of subspaces.
  std::size_t size() const;
  /// Offset of layer k inside the full index set L = L_0 u ... u L_n.
  std::size_t offset(long k) const;

  /// Index of x inside its layer.  Throws InvalidParameter if x is foreign.
  std::size_t index_of(const Subspace& x) const;

 private:
  long n_;
  long q_;
  PrimeField field_;
  std::vector<std::vector<Subspace>> layers_;
  std::vector<std::unordered_map<std::string, std::size_t>> lookup_;
};

}  // namespace qcross

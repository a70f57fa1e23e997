#include "qcross/subspace.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "qcross/errors.hpp"
#include "qcross/spectrum.hpp"

namespace qcross {

PrimeField::PrimeField(long q) : q_(q) {
  if (!is_prime(q)) {
    throw Unsupported("subspace enumeration needs a prime field size, got q=" + std::to_string(q));
  }
  inverse_.assign(static_cast<std::size_t>(q), 0);
  for (long a = 1; a < q; ++a) {
    for (long b = 1; b < q; ++b) {
      if ((a * b) % q == 1) {
        inverse_[static_cast<std::size_t>(a)] = static_cast<Element>(b);
        break;
      }
    }
  }
  for (long g = 1; g < q; ++g) {
    long x = 1;
    long order = 0;
    do {
      x = (x * g) % q;
      ++order;
    } while (x != 1);
    if (order == q - 1) {
      primitive_root_ = static_cast<Element>(g);
      break;
    }
  }
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a % q_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
  return inverse_[a % q_];
}

long row_reduce(const PrimeField& f, FqMatrix& m) {
  long rank = 0;
  for (long col = 0; col < m.cols && rank < m.rows; ++col) {
    long pivot = -1;
    for (long r = rank; r < m.rows; ++r) {
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      for (long c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
    }
    const auto scale = f.inv(m.at(rank, col));
    for (long c = 0; c < m.cols; ++c) m.at(rank, c) = f.mul(m.at(rank, c), scale);
    for (long r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, col) == 0) continue;
      const auto factor = m.at(r, col);
      for (long c = 0; c < m.cols; ++c) {
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(rank, c)));
      }
    }
    ++rank;
  }
  return rank;
}

Subspace::Subspace(const PrimeField& field, FqMatrix spanning_rows) : q_(field.order()) {
  const long rank = row_reduce(field, spanning_rows);
  basis_ = FqMatrix(rank, spanning_rows.cols);
  std::copy_n(spanning_rows.data.begin(), rank * spanning_rows.cols, basis_.data.begin());
}

std::vector<long> Subspace::pivots() const {
  std::vector<long> out;
  for (long r = 0; r < basis_.rows; ++r) {
    for (long c = 0; c < basis_.cols; ++c) {
      if (basis_.at(r, c) != 0) {
        out.push_back(c);
        break;
      }
    }
  }
  return out;
}

std::string Subspace::key() const {
  std::string k;
  k.reserve(basis_.data.size() + 2);
  k.push_back(static_cast<char>(basis_.rows));
  k.push_back(static_cast<char>(basis_.cols));
  for (auto v : basis_.data) k.push_back(static_cast<char>(v));
  return k;
}

Subspace coordinate_subspace(const PrimeField& field, long n, const std::vector<long>& coords) {
  FqMatrix m(static_cast<long>(coords.size()), n);
  for (std::size_t r = 0; r < coords.size(); ++r) m.at(static_cast<long>(r), coords[r]) = 1;
  return Subspace(field, std::move(m));
}

std::vector<Subspace> enumerate(long n, long k, long q) {
  PrimeField field(q);
  if (q > 251) throw Unsupported("subspace enumeration supports q <= 251");
  if (n < 0 || k < 0 || k > n) {
    throw InvalidParameter("enumerate: need 0 <= k <= n, got n=" + std::to_string(n) +
                           " k=" + std::to_string(k));
  }
  std::vector<Subspace> out;
  std::vector<long> piv(static_cast<std::size_t>(k));
  std::iota(piv.begin(), piv.end(), 0);
  while (true) {
    // Free positions: right of the row's pivot, not in a pivot column.
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (long p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::pair<long, long>> free;
    for (long r = 0; r < k; ++r) {
      for (long c = piv[static_cast<std::size_t>(r)] + 1; c < n; ++c) {
        if (!is_pivot[static_cast<std::size_t>(c)]) free.emplace_back(r, c);
      }
    }
    std::vector<PrimeField::Element> digits(free.size(), 0);
    bool done = false;
    while (!done) {
      FqMatrix m(k, n);
      for (long r = 0; r < k; ++r) m.at(r, piv[static_cast<std::size_t>(r)]) = 1;
      for (std::size_t j = 0; j < free.size(); ++j) m.at(free[j].first, free[j].second) = digits[j];
      out.emplace_back(field, std::move(m));
      // Odometer, last position fastest: row-major lexicographic order.
      done = true;
      for (std::size_t j = digits.size(); j > 0; --j) {
        if (++digits[j - 1] < static_cast<PrimeField::Element>(q)) {
          done = false;
          break;
        }
        digits[j - 1] = 0;
      }
    }
    // Next pivot set in lexicographic order.
    long r = k - 1;
    while (r >= 0 && piv[static_cast<std::size_t>(r)] == n - k + r) --r;
    if (r < 0) break;
    ++piv[static_cast<std::size_t>(r)];
    for (long s = r + 1; s < k; ++s) piv[static_cast<std::size_t>(s)] = piv[static_cast<std::size_t>(s - 1)] + 1;
  }
  return out;
}

namespace {

long stacked_rank(const Subspace& x, const Subspace& y) {
  if (x.ambient_dim() != y.ambient_dim() || x.field_order() != y.field_order()) {
    throw InvalidParameter("subspaces live in different ambient spaces");
  }
  PrimeField field(x.field_order());
  FqMatrix m(x.dim() + y.dim(), x.ambient_dim());
  std::copy(x.basis().data.begin(), x.basis().data.end(), m.data.begin());
  std::copy(y.basis().data.begin(), y.basis().data.end(),
            m.data.begin() + static_cast<std::ptrdiff_t>(x.basis().data.size()));
  return row_reduce(field, m);
}

}  // namespace

long intersect_dim(const Subspace& x, const Subspace& y) {
  return x.dim() + y.dim() - stacked_rank(x, y);
}

bool contains(const Subspace& big, const Subspace& small) {
  return small.dim() <= big.dim() && stacked_rank(big, small) == big.dim();
}

Subspace transform(const PrimeField& field, const Subspace& x, const FqMatrix& g) {
  const long n = x.ambient_dim();
  FqMatrix m(x.dim(), n);
  for (long r = 0; r < x.dim(); ++r) {
    for (long c = 0; c < n; ++c) {
      PrimeField::Element acc = 0;
      for (long t = 0; t < n; ++t) acc = field.add(acc, field.mul(x.basis().at(r, t), g.at(t, c)));
      m.at(r, c) = acc;
    }
  }
  return Subspace(field, std::move(m));
}

SubspaceLattice::SubspaceLattice(long n, long q) : n_(n), q_(q), field_(q) {
  if (n < 0) throw InvalidParameter("lattice dimension must be >= 0");
  for (long k = 0; k <= n; ++k) {
    layers_.push_back(enumerate(n, k, q));
    std::unordered_map<std::string, std::size_t> idx;
    idx.reserve(layers_.back().size());
    for (std::size_t i = 0; i < layers_.back().size(); ++i) idx.emplace(layers_.back()[i].key(), i);
    lookup_.push_back(std::move(idx));
  }
}

const std::vector<Subspace>& SubspaceLattice::layer(long k) const {
  if (k < 0 || k > n_) throw InvalidParameter("layer index out of range: " + std::to_string(k));
  return layers_[static_cast<std::size_t>(k)];
}

std::size_t SubspaceLattice::size() const {
  std::size_t total = 0;
  for (const auto& l : layers_) total += l.size();
  return total;
}

std::size_t SubspaceLattice::offset(long k) const {
  std::size_t off = 0;
  for (long j = 0; j < k; ++j) off += layer(j).size();
  return off;
}

std::size_t SubspaceLattice::index_of(const Subspace& x) const {
  if (x.ambient_dim() != n_ || x.field_order() != q_) {
    throw InvalidParameter("subspace does not belong to this lattice");
  }
  const auto& idx = lookup_[static_cast<std::size_t>(x.dim())];
  auto it = idx.find(x.key());
  if (it == idx.end()) throw InvalidParameter("subspace not found in lattice");
  return it->second;
}

}  // namespace qcross

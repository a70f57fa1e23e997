#include "qcross/incidence.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "qcross/errors.hpp"

namespace qcross {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& x) { return sgn(x) == 0; });
}

std::optional<std::pair<std::size_t, std::size_t>> RationalMatrix::first_difference(
    const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return std::make_pair(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (data_[i] != other.data_[i]) return std::make_pair(i / cols_, i % cols_);
  }
  return std::nullopt;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidParameter("matrix shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& s) {
  for (auto& x : data_) x *= s;
  return *this;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidParameter("matrix shape mismatch in product");
  RationalMatrix out(a.rows_, b.cols_);
  Rational tmp;
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t t = 0; t < a.cols_; ++t) {
      const Rational& x = a(i, t);
      if (sgn(x) == 0) continue;
      const bool unit = (x == 1);
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rational& y = b(t, j);
        if (sgn(y) == 0) continue;
        if (unit) {
          out(i, j) += y;
        } else {
          mpq_mul(tmp.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
          out(i, j) += tmp;
        }
      }
    }
  }
  return out;
}

const char* to_string(IncidenceKind kind) {
  switch (kind) {
    case IncidenceKind::W:
      return "W";
    case IncidenceKind::Wbar:
      return "Wbar";
    case IncidenceKind::I:
      return "I";
    case IncidenceKind::J:
      return "J";
  }
  return "?";
}

std::size_t default_entry_guard() {
  if (const char* env = std::getenv("QCROSS_MAX_ENTRIES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 50'000'000;
}

IncidenceAlgebra::IncidenceAlgebra(const SubspaceLattice& lattice, std::size_t entry_guard)
    : lattice_(lattice) {
  const double total = static_cast<double>(lattice.size());
  const double estimate = total * total;
  if (estimate > static_cast<double>(entry_guard)) {
    throw SizeGuardExceeded("dense incidence algebra for n=" + std::to_string(lattice.n()) +
                                " q=" + std::to_string(lattice.q()) + " needs ~" +
                                std::to_string(static_cast<unsigned long long>(estimate)) +
                                " entries, guard is " + std::to_string(entry_guard),
                            estimate);
  }
}

const std::vector<unsigned char>& IncidenceAlgebra::meet_table(long k, long l) const {
  auto key = std::make_pair(k, l);
  auto it = meet_.find(key);
  if (it != meet_.end()) return it->second;
  const auto& rows = lattice_.layer(k);
  const auto& cols = lattice_.layer(l);
  std::vector<unsigned char> table(rows.size() * cols.size());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    for (std::size_t y = 0; y < cols.size(); ++y) {
      table[x * cols.size() + y] = static_cast<unsigned char>(intersect_dim(rows[x], cols[y]));
    }
  }
  return meet_.emplace(key, std::move(table)).first->second;
}

long IncidenceAlgebra::meet_dim(long k, std::size_t x, long l, std::size_t y) const {
  return meet_table(k, l)[x * lattice_.layer_size(l) + y];
}

const RationalMatrix& IncidenceAlgebra::W(long k, long l) const {
  auto key = std::make_pair(k, l);
  if (auto it = w_.find(key); it != w_.end()) return it->second;
  const auto& table = meet_table(k, l);
  const std::size_t rows = lattice_.layer_size(k), cols = lattice_.layer_size(l);
  const long target = std::min(k, l);
  RationalMatrix m(rows, cols);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      if (table[x * cols + y] == target) m(x, y) = 1;
    }
  }
  return w_.emplace(key, std::move(m)).first->second;
}

const RationalMatrix& IncidenceAlgebra::Wbar(long k, long l) const {
  auto key = std::make_pair(k, l);
  if (auto it = wbar_.find(key); it != wbar_.end()) return it->second;
  const auto& table = meet_table(k, l);
  const std::size_t rows = lattice_.layer_size(k), cols = lattice_.layer_size(l);
  RationalMatrix m(rows, cols);
  for (std::size_t x = 0; x < rows; ++x) {
    for (std::size_t y = 0; y < cols; ++y) {
      if (table[x * cols + y] == 0) m(x, y) = 1;
    }
  }
  return wbar_.emplace(key, std::move(m)).first->second;
}

RationalMatrix IncidenceAlgebra::I(long k) const { return RationalMatrix::identity(lattice_.layer_size(k)); }

RationalMatrix IncidenceAlgebra::J(long k, long l) const {
  RationalMatrix m(lattice_.layer_size(k), lattice_.layer_size(l));
  for (std::size_t x = 0; x < m.rows(); ++x) {
    for (std::size_t y = 0; y < m.cols(); ++y) m(x, y) = 1;
  }
  return m;
}

RationalMatrix IncidenceAlgebra::block(IncidenceKind kind, long k, long l) const {
  switch (kind) {
    case IncidenceKind::W:
      return W(k, l);
    case IncidenceKind::Wbar:
      return Wbar(k, l);
    case IncidenceKind::I:
      if (k != l) throw InvalidParameter("I_k needs equal row and column layers");
      return I(k);
    case IncidenceKind::J:
      return J(k, l);
  }
  throw InvalidParameter("unknown incidence kind");
}

std::size_t IncidenceAlgebra::full_size(bool with_copy_of, long copied_dim) const {
  return lattice_.size() + (with_copy_of ? lattice_.layer_size(copied_dim) : 0);
}

RationalMatrix IncidenceAlgebra::build_full(IncidenceKind kind, LayerRef rows, LayerRef cols) const {
  if (rows.copy && cols.copy && rows.dim != cols.dim) {
    throw InvalidParameter("only one layer can be duplicated");
  }
  const bool dup = rows.copy || cols.copy;
  const long copied = rows.copy ? rows.dim : cols.dim;
  const std::size_t size = full_size(dup, copied);
  auto start = [&](const LayerRef& ref) { return ref.copy ? lattice_.size() : lattice_.offset(ref.dim); };
  const RationalMatrix b = block(kind, rows.dim, cols.dim);
  RationalMatrix full(size, size);
  const std::size_t r0 = start(rows), c0 = start(cols);
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < b.cols(); ++c) full(r0 + r, c0 + c) = b(r, c);
  }
  return full;
}

namespace {

std::string where(std::initializer_list<std::pair<const char*, long>> idx) {
  std::string s;
  for (const auto& [name, v] : idx) {
    if (!s.empty()) s += ' ';
    s += name;
    s += '=';
    s += std::to_string(v);
  }
  return s;
}

void add_equality(Report& rep, const std::string& name, const RationalMatrix& lhs, const RationalMatrix& rhs) {
  auto diff = lhs.first_difference(rhs);
  std::string detail;
  if (diff) {
    detail = "first violation at (" + std::to_string(diff->first) + ", " + std::to_string(diff->second) + ")";
  }
  rep.add(name, !diff, detail);
}

}  // namespace

Report verify_identities(const IncidenceAlgebra& alg, long kmax) {
  const long n = alg.n();
  const long q = alg.q();
  kmax = std::min(kmax, n);
  Report rep;

  for (long k = 0; k <= kmax; ++k) {
    add_equality(rep, "I_k = W_{k,k} " + where({{"k", k}}), alg.W(k, k), alg.I(k));
    for (long l = 0; l <= kmax; ++l) {
      add_equality(rep, "W transpose symmetry " + where({{"k", k}, {"l", l}}), alg.W(k, l),
                   alg.W(l, k).transpose());
      add_equality(rep, "Wbar transpose symmetry " + where({{"k", k}, {"l", l}}), alg.Wbar(k, l),
                   alg.Wbar(l, k).transpose());
    }
  }

  // W_{k,l} W_{l,i} = [k-i, l-i] W_{k,i} for i <= l <= k.
  for (long k = 0; k <= kmax; ++k) {
    for (long l = 0; l <= k; ++l) {
      for (long i = 0; i <= l; ++i) {
        add_equality(rep, "containment product " + where({{"k", k}, {"l", l}, {"i", i}}),
                     alg.W(k, l) * alg.W(l, i), Rational(gauss(k - i, l - i, q)) * alg.W(k, i));
      }
    }
  }

  // W_{i,k} Wbar_{k,l} = q^{l(k-i)} [n-i-l, k-i] Wbar_{i,l} for i <= k.
  for (long k = 0; k <= kmax; ++k) {
    for (long i = 0; i <= k; ++i) {
      for (long l = 0; l <= kmax; ++l) {
        const Rational coef(ipow(q, static_cast<unsigned long>(l * (k - i))) * gauss(n - i - l, k - i, q));
        add_equality(rep, "containment-disjointness product " + where({{"i", i}, {"k", k}, {"l", l}}),
                     alg.W(i, k) * alg.Wbar(k, l), coef * alg.Wbar(i, l));
      }
    }
  }

  // Wbar_{k,l} = sum_h (-1)^h q^{binom(h,2)} W_{k,h} W_{h,l}.
  for (long k = 0; k <= kmax; ++k) {
    for (long l = 0; l <= kmax; ++l) {
      RationalMatrix sum(alg.lattice().layer_size(k), alg.lattice().layer_size(l));
      for (long h = 0; h <= std::min(k, l); ++h) {
        Rational coef(ipow(q, static_cast<unsigned long>(h * (h - 1) / 2)));
        if (h % 2 != 0) coef = -coef;
        sum += coef * (alg.W(k, h) * alg.W(h, l));
      }
      add_equality(rep, "disjointness expansion " + where({{"k", k}, {"l", l}}), alg.Wbar(k, l), sum);
    }
  }
  return rep;
}

void write_triplets(std::ostream& out, const IncidenceAlgebra& alg, IncidenceKind kind, long k, long l) {
  const RationalMatrix m = alg.block(kind, k, l);
  out << alg.n() << ' ' << k << ' ' << l << ' ' << alg.q() << ' ' << to_string(kind) << ' ' << m.rows()
      << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (sgn(m(r, c)) != 0) out << r << ' ' << c << ' ' << m(r, c).get_str() << '\n';
    }
  }
}

}  // namespace qcross

#include "qcross/families.hpp"

#include <algorithm>
#include <bitset>
#include <chrono>
#include <numeric>

#include "qcross/errors.hpp"

namespace qcross {

namespace {

const Subspace& member(const SubspaceLattice& lat, const Family& f, std::size_t pos) {
  return lat.layer(f.k)[f.members[pos]];
}

void require_lattice(const SubspaceLattice& lat, const Family& f) {
  if (f.q != lat.q() || f.n != lat.n()) throw InvalidParameter("family does not belong to this lattice");
}

// Ordered pairs (x, x') of members with x cap x' = 0.
std::size_t disjoint_ordered_pairs(const SubspaceLattice& lat, const Family& f) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < f.size(); ++b) {
      if (intersect_dim(member(lat, f, a), member(lat, f, b)) == 0) ++count;
    }
  }
  return count;
}

}  // namespace

Family make_family(const SubspaceLattice& lattice, long k, std::vector<std::size_t> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (!members.empty() && members.back() >= lattice.layer_size(k)) {
    throw InvalidParameter("family member index out of range");
  }
  return Family{lattice.q(), lattice.n(), k, std::move(members)};
}

Family point_star(const SubspaceLattice& lattice, const Subspace& z, long k) {
  if (z.dim() != 1) throw InvalidParameter("point_star: z must be 1-dimensional");
  std::vector<std::size_t> idx;
  const auto& layer = lattice.layer(k);
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (contains(layer[i], z)) idx.push_back(i);
  }
  return make_family(lattice, k, std::move(idx));
}

Family hyperplane_family(const SubspaceLattice& lattice, const Subspace& z, long k) {
  if (lattice.n() != 2 * k) throw InvalidParameter("hyperplane_family: requires n = 2k");
  if (z.dim() != 2 * k - 1) throw InvalidParameter("hyperplane_family: z must have dimension 2k-1");
  std::vector<std::size_t> idx;
  const auto& layer = lattice.layer(k);
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (contains(z, layer[i])) idx.push_back(i);
  }
  return make_family(lattice, k, std::move(idx));
}

bool is_cross_intersecting(const SubspaceLattice& lattice, const Family& f, const Family& g) {
  require_lattice(lattice, f);
  require_lattice(lattice, g);
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      if (intersect_dim(member(lattice, f, a), member(lattice, g, b)) == 0) return false;
    }
  }
  return true;
}

bool is_intersecting(const SubspaceLattice& lattice, const Family& f) {
  return is_cross_intersecting(lattice, f, f);
}

PrimalSolution::PrimalSolution(Family f, Family g) : f_(std::move(f)), g_(std::move(g)) {
  if (f_.empty() || g_.empty()) throw InvalidParameter("primal solution needs nonempty families");
  product_ = Integer(static_cast<unsigned long>(f_.size())) * Integer(static_cast<unsigned long>(g_.size()));
}

QuadraticNumber PrimalSolution::entry(Side a, Side b) const {
  if (a == Side::F && b == Side::F) {
    return QuadraticNumber::rational(product_, Rational(1, static_cast<unsigned long>(f_.size())));
  }
  if (a == Side::G && b == Side::G) {
    return QuadraticNumber::rational(product_, Rational(1, static_cast<unsigned long>(g_.size())));
  }
  // 1/sqrt(P) = sqrt(P)/P.
  return QuadraticNumber::radical(product_, ratio(1, product_));
}

Report primal_check(const SubspaceLattice& lattice, const Family& f, const Family& g, const Parameters& params) {
  require_lattice(lattice, f);
  require_lattice(lattice, g);
  if (f.empty() || g.empty()) throw InvalidParameter("primal_check: families must be nonempty");
  const bool layers_ok = (f.k == params.k && g.k == params.l) || (f.k == params.l && g.k == params.k);
  if (!layers_ok) throw InvalidParameter("primal_check: family dimensions do not match (k, l)");
  if (!is_cross_intersecting(lattice, f, g)) {
    throw InvalidParameter("primal_check: families are not cross-intersecting");
  }

  using Side = PrimalSolution::Side;
  const PrimalSolution x(f, g);
  const Integer& P = x.radicand();
  Report rep;

  QuadraticNumber trace_f(P), trace_g(P);
  for (std::size_t a = 0; a < f.size(); ++a) trace_f += x.entry(Side::F, Side::F);
  for (std::size_t b = 0; b < g.size(); ++b) trace_g += x.entry(Side::G, Side::G);
  const QuadraticNumber one = QuadraticNumber::rational(P, 1);
  rep.add("I_k . X = 1", trace_f == one, to_string(trace_f));
  rep.add("I_l . X = 1", trace_g == one, to_string(trace_g));

  QuadraticNumber disjoint(P), objective(P);
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      const QuadraticNumber xy = x.entry(Side::F, Side::G);
      objective += xy;
      if (intersect_dim(member(lattice, f, a), member(lattice, g, b)) == 0) disjoint += xy * Rational(2);
    }
  }
  rep.add("(Wbar_{k,l} + Wbar_{l,k}) . X = 0", disjoint.is_zero(), to_string(disjoint));
  rep.add("objective = sqrt(|F||G|)", objective == QuadraticNumber::radical(P, 1), to_string(objective));
  rep.add("objective^2 = |F||G|", objective.squared() == QuadraticNumber::rational(P, Rational(P)));

  const QuadraticNumber ff = x.entry(Side::F, Side::F), gg = x.entry(Side::G, Side::G),
                        fg = x.entry(Side::F, Side::G);
  rep.add("X >= 0 entrywise", ff.sign() >= 0 && gg.sign() >= 0 && fg.sign() >= 0);
  rep.add("X rank one (X_fg^2 = X_ff X_gg)", fg.squared() == ff * gg);

  const Integer D = dual_radicand(params);
  rep.add("weak duality |F||G| <= (alpha+beta)^2", P <= D, P.get_str() + " <= " + D.get_str());
  return rep;
}

Report slackness_check(const SubspaceLattice& lattice, const Family& f, const Family& g,
                       const DualCertificate& cert) {
  require_lattice(lattice, f);
  require_lattice(lattice, g);
  const Parameters& params = cert.params;
  if (f.k != params.k || g.k != params.l) {
    throw InvalidParameter("slackness_check: F must live on L_k and G on L_l");
  }
  const Integer P = Integer(static_cast<unsigned long>(f.size())) * Integer(static_cast<unsigned long>(g.size()));
  if (P != cert.D) {
    throw InvalidParameter("slackness_check: needs |F||G| = D (" + P.get_str() + " vs " + cert.D.get_str() + ")");
  }
  if (cert.verdict != Verdict::feasible || sgn(cert.coefficients.lambda) <= 0) {
    throw InvalidParameter("slackness_check: certificate must be feasible with lambda > 0");
  }

  const Integer& D = cert.D;
  const auto& co = cert.coefficients;
  Report rep;
  rep.add("F intersecting", is_intersecting(lattice, f));
  rep.add("G intersecting", is_intersecting(lattice, g));

  const Rational inv_f(1, static_cast<unsigned long>(f.size()));
  const Rational inv_g(1, static_cast<unsigned long>(g.size()));
  const Rational wkk = Rational(static_cast<unsigned long>(disjoint_ordered_pairs(lattice, f))) * inv_f;
  const Rational wll = Rational(static_cast<unsigned long>(disjoint_ordered_pairs(lattice, g))) * inv_g;
  rep.add("Wbar_{k,k} . X = 0", sgn(wkk) == 0, to_string(wkk));
  rep.add("Wbar_{l,l} . X = 0", sgn(wll) == 0, to_string(wll));
  const QuadraticNumber a_dot = co.a_lambda * wkk + QuadraticNumber::rational(D, co.lambda * wll);
  rep.add("A . X = 0", a_dot.is_zero(), to_string(a_dot));

  // S . X summed entry by entry over the support F u G of X.
  const QuadraticNumber x_fg = QuadraticNumber::radical(D, ratio(1, D));
  QuadraticNumber s_dot(D);
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < f.size(); ++b) {
      QuadraticNumber s_entry(D);
      if (a == b) s_entry += co.alpha;
      if (intersect_dim(member(lattice, f, a), member(lattice, f, b)) == 0) s_entry -= co.a_lambda;
      s_dot += s_entry * inv_f;
    }
  }
  for (std::size_t a = 0; a < g.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      QuadraticNumber s_entry(D);
      if (a == b) s_entry += co.beta;
      if (intersect_dim(member(lattice, g, a), member(lattice, g, b)) == 0) {
        s_entry -= QuadraticNumber::rational(D, co.lambda);
      }
      s_dot += s_entry * inv_g;
    }
  }
  for (std::size_t a = 0; a < f.size(); ++a) {
    for (std::size_t b = 0; b < g.size(); ++b) {
      QuadraticNumber s_entry = QuadraticNumber::rational(D, Rational(-1, 2));
      if (intersect_dim(member(lattice, f, a), member(lattice, g, b)) == 0) s_entry -= co.b_lambda;
      // Both (x, y) and (y, x).
      s_dot += s_entry * x_fg * Rational(2);
    }
  }
  rep.add("S . X = 0", s_dot.is_zero(), to_string(s_dot));
  return rep;
}

std::vector<std::size_t> orbit_representatives(const SubspaceLattice& lattice, long k) {
  const long n = lattice.n();
  const PrimeField& field = lattice.field();
  const auto& layer = lattice.layer(k);

  std::vector<FqMatrix> generators;
  auto identity = [&] {
    FqMatrix m(n, n);
    for (long i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  };
  if (n >= 2) {
    FqMatrix swap01 = identity();
    swap01.at(0, 0) = swap01.at(1, 1) = 0;
    swap01.at(0, 1) = swap01.at(1, 0) = 1;
    generators.push_back(swap01);
    FqMatrix cycle(n, n);
    for (long i = 0; i < n; ++i) cycle.at(i, (i + 1) % n) = 1;
    generators.push_back(cycle);
    FqMatrix transvection = identity();
    transvection.at(0, 1) = 1;
    generators.push_back(transvection);
  }
  if (lattice.q() > 2 && n >= 1) {
    FqMatrix scale = identity();
    scale.at(0, 0) = field.primitive_root();
    generators.push_back(scale);
  }

  std::vector<std::size_t> parent(layer.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t i = 0; i < layer.size(); ++i) {
    for (const auto& g : generators) {
      const std::size_t j = lattice.index_of(transform(field, layer[i], g));
      std::size_t a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < layer.size(); ++i) {
    if (find(i) == i) reps.push_back(i);
  }
  return reps;
}

namespace {

using Bits = std::bitset<128>;

class BranchAndBound {
 public:
  BranchAndBound(std::vector<Bits> neighbours, std::size_t g_size, double budget)
      : nbr_(std::move(neighbours)),
        g_size_(g_size),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget))) {}

  void run_from(std::size_t root) {
    Bits g;
    for (std::size_t y = 0; y < g_size_; ++y) g.set(y);
    g &= ~nbr_[root];
    chosen_.assign(1, root);
    std::vector<std::size_t> rest;
    for (std::size_t x = 0; x < nbr_.size(); ++x) {
      if (x != root) rest.push_back(x);
    }
    // Least destructive candidates first.
    std::stable_sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      return (nbr_[a] & g).count() < (nbr_[b] & g).count();
    });
    order_ = std::move(rest);
    dfs(0, g);
  }

  std::uint64_t best() const { return best_; }
  const std::vector<std::size_t>& witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }
  bool timed_out() const { return timed_out_; }

 private:
  void dfs(std::size_t pos, const Bits& g) {
    if (timed_out_) return;
    if ((++nodes_ & 0xFFF) == 0 && std::chrono::steady_clock::now() > deadline_) {
      timed_out_ = true;
      return;
    }
    const std::uint64_t g_count = g.count();
    const std::uint64_t value = chosen_.size() * g_count;
    if (value > best_) {
      best_ = value;
      witness_ = chosen_;
    }
    if (pos == order_.size() || g_count == 0) return;

    // Admissible bound: adding t more members removes at least the t-th
    // smallest removal count from G.
    std::vector<std::uint64_t> removal;
    removal.reserve(order_.size() - pos);
    for (std::size_t j = pos; j < order_.size(); ++j) removal.push_back((nbr_[order_[j]] & g).count());
    std::sort(removal.begin(), removal.end());
    std::uint64_t bound = value;
    for (std::size_t t = 1; t <= removal.size(); ++t) {
      if (removal[t - 1] >= g_count) break;
      bound = std::max<std::uint64_t>(bound, (chosen_.size() + t) * (g_count - removal[t - 1]));
    }
    if (bound <= best_) return;

    const std::size_t x = order_[pos];
    const Bits reduced = g & ~nbr_[x];
    chosen_.push_back(x);
    dfs(pos + 1, reduced);
    chosen_.pop_back();
    // Excluding x cannot beat including it when x removes nothing from G.
    if (reduced != g) dfs(pos + 1, g);
  }

  std::vector<Bits> nbr_;
  std::size_t g_size_;
  std::chrono::steady_clock::time_point deadline_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> witness_;
  std::uint64_t best_ = 0;
  std::uint64_t nodes_ = 0;
  bool timed_out_ = false;
};

}  // namespace

SearchResult brute_force_max(const SubspaceLattice& lattice, long k, long l, double budget_seconds) {
  const auto& lk = lattice.layer(k);
  const auto& ll = lattice.layer(l);
  if (lk.size() + ll.size() > 80) {
    throw InvalidParameter("brute_force_max: [n,k] + [n,l] = " + std::to_string(lk.size() + ll.size()) +
                           " exceeds the guard of 80");
  }
  std::vector<Bits> nbr(lk.size());
  for (std::size_t x = 0; x < lk.size(); ++x) {
    for (std::size_t y = 0; y < ll.size(); ++y) {
      if (intersect_dim(lk[x], ll[y]) == 0) nbr[x].set(y);
    }
  }

  SearchResult res;
  const std::vector<std::size_t> reps = orbit_representatives(lattice, k);
  res.orbit_count = reps.size();
  BranchAndBound search(nbr, ll.size(), budget_seconds);
  std::uint64_t best = 0;
  std::vector<std::size_t> best_f;
  for (std::size_t root : reps) {
    search.run_from(root);
    if (search.best() > best) {
      best = search.best();
      best_f = search.witness();
    }
    if (search.timed_out()) break;
  }
  res.best_product = best;
  res.nodes_explored = search.nodes();
  res.exact = !search.timed_out();

  res.f = make_family(lattice, k, best_f);
  Bits g;
  for (std::size_t y = 0; y < ll.size(); ++y) g.set(y);
  for (std::size_t x : best_f) g &= ~nbr[x];
  std::vector<std::size_t> g_members;
  for (std::size_t y = 0; y < ll.size(); ++y) {
    if (g.test(y)) g_members.push_back(y);
  }
  res.g = make_family(lattice, l, std::move(g_members));
  return res;
}

namespace {

std::vector<std::size_t> random_subset(const std::vector<std::size_t>& pool, std::mt19937_64& rng) {
  std::vector<std::size_t> out;
  if (pool.empty()) return out;
  std::bernoulli_distribution coin(0.5);
  for (auto v : pool) {
    if (coin(rng)) out.push_back(v);
  }
  if (out.empty()) out.push_back(pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)]);
  return out;
}

std::vector<std::size_t> meeting_all(const SubspaceLattice& lat, long l, const Family& f) {
  std::vector<std::size_t> out;
  const auto& layer = lat.layer(l);
  for (std::size_t y = 0; y < layer.size(); ++y) {
    bool ok = true;
    for (std::size_t a = 0; a < f.size() && ok; ++a) ok = intersect_dim(member(lat, f, a), layer[y]) > 0;
    if (ok) out.push_back(y);
  }
  return out;
}

}  // namespace

std::pair<Family, Family> sample_cross_intersecting(const SubspaceLattice& lattice, long k, long l,
                                                    std::mt19937_64& rng) {
  const std::size_t nk = lattice.layer_size(k);
  std::uniform_int_distribution<std::size_t> pick(0, nk - 1);
  std::uniform_int_distribution<std::size_t> how_many(1, std::min<std::size_t>(6, nk));
  while (true) {
    std::vector<std::size_t> idx;
    const std::size_t s = how_many(rng);
    for (std::size_t j = 0; j < s; ++j) idx.push_back(pick(rng));
    Family f = make_family(lattice, k, idx);
    const auto pool = meeting_all(lattice, l, f);
    if (pool.empty()) continue;
    return {f, make_family(lattice, l, random_subset(pool, rng))};
  }
}

std::pair<Family, Family> sample_perturbed_stars(const SubspaceLattice& lattice, long k, long l,
                                                 std::mt19937_64& rng) {
  const auto& points = lattice.layer(1);
  std::uniform_int_distribution<std::size_t> pick_point(0, points.size() - 1);
  while (true) {
    const Subspace& z = points[pick_point(rng)];
    const Family star_k = point_star(lattice, z, k);
    const Family star_l = point_star(lattice, z, l);
    std::vector<std::size_t> f_idx = random_subset(star_k.members, rng);
    std::vector<std::size_t> outside;
    for (std::size_t x = 0; x < lattice.layer_size(k); ++x) {
      if (!std::binary_search(star_k.members.begin(), star_k.members.end(), x)) outside.push_back(x);
    }
    if (!outside.empty()) {
      f_idx.push_back(outside[std::uniform_int_distribution<std::size_t>(0, outside.size() - 1)(rng)]);
    }
    Family f = make_family(lattice, k, f_idx);
    std::vector<std::size_t> g_idx;
    for (std::size_t y : random_subset(star_l.members, rng)) {
      bool ok = true;
      for (std::size_t a = 0; a < f.size() && ok; ++a) {
        ok = intersect_dim(member(lattice, f, a), lattice.layer(l)[y]) > 0;
      }
      if (ok) g_idx.push_back(y);
    }
    if (g_idx.empty()) continue;
    return {f, make_family(lattice, l, g_idx)};
  }
}

}  // namespace qcross

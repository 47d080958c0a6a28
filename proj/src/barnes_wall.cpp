#include "bwlat/barnes_wall.hpp"

#include <map>
#include <mutex>
#include <unordered_set>

namespace bwlat {

namespace {

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.set_block(0, 0, a);
  m.set_block(a.rows(), a.cols(), b);
  return m;
}

// [x, s*x] for each basis row of l
ScaledLattice embed(const ScaledLattice& l, int first, int second) {
  const std::size_t h = l.ambient_dim();
  IntMatrix rows(l.rank(), 2 * h);
  for (std::size_t i = 0; i < l.rank(); ++i)
    for (std::size_t j = 0; j < h; ++j) {
      rows(i, j) = first * l.basis()(i, j);
      rows(i, h + j) = second * l.basis()(i, j);
    }
  return ScaledLattice::from_generators(rows, l.denom_exp());
}

// A lies in the dual of B and det(A) det(B) = 1, i.e. A = B*.
bool is_dual_of(const ScaledLattice& a, const ScaledLattice& b) {
  if (a.rank() != b.rank()) return false;
  IntMatrix cross = a.basis() * b.basis().transpose();
  Integer den = 1;
  den <<= a.denom_exp() + b.denom_exp();
  for (const auto& x : cross.data())
    if (!mpz_divisible_p(x.get_mpz_t(), den.get_mpz_t())) return false;
  return lattice_determinant(a) * lattice_determinant(b) == 1;
}

std::map<int, BWPtr>& bw_cache() {
  static std::map<int, BWPtr> cache;
  return cache;
}

std::mutex& bw_mutex() {
  static std::mutex m;
  return m;
}

BWPtr build_uncached(int d) {
  auto bw = std::make_shared<BWLattice>();
  bw->d = d;
  if (d == 1) {
    bw->lattice = ScaledLattice(IntMatrix::identity(2), 0);
    bw->f = IntMatrix::from_rows({{0, 1}, {-1, 0}});
    bw->lower_generators = {bw->f, IntMatrix::from_rows({{1, 0}, {0, -1}})};
    bw->duality_level = 0;
    return bw;
  }
  BWPtr m = build_bw(d - 1);
  const int r = m->duality_level;
  const std::size_t h = m->lattice.ambient_dim();
  ScaledLattice top = sultry_twist(m->lattice, m->f, 1 - r, false);
  ScaledLattice diag = sultry_twist(m->lattice, m->f, -r, false);
  bw->child = m;
  bw->m1 = embed(top, 1, 0);
  bw->m2 = embed(top, 0, 1);
  bw->m12 = embed(diag, 1, 1);
  bw->m12p = embed(diag, 1, -1);
  bw->lattice = lattice_sum({bw->m1, bw->m2, bw->m12});
  bw->f = block_diag(m->f, m->f);
  const IntMatrix id = IntMatrix::identity(h);
  bw->t1 = block_diag(-id, id);
  bw->t2 = block_diag(id, -id);
  bw->t12 = IntMatrix(2 * h, 2 * h);
  bw->t12.set_block(0, h, -id);
  bw->t12.set_block(h, 0, -id);
  bw->t12p = IntMatrix(2 * h, 2 * h);
  bw->t12p.set_block(0, h, id);
  bw->t12p.set_block(h, 0, id);
  for (const auto& g : m->lower_generators) bw->lower_generators.push_back(block_diag(g, g));
  bw->lower_generators.push_back(bw->t1);
  bw->lower_generators.push_back(bw->t12);

  if (is_dual_of(bw->lattice, bw->lattice)) {
    bw->duality_level = 0;
  } else if (is_dual_of(sultry_twist(bw->lattice, bw->f, -1, false), bw->lattice)) {
    bw->duality_level = 1;
  } else {
    throw Error(ErrorKind::NoDualityLevel, "constructed lattice has no duality level in {0,1}");
  }
  return bw;
}

}  // namespace

BWPtr build_bw(int d) {
  if (d < 1) throw Error(ErrorKind::InvalidParameter, "BW level must be at least 1");
  if ((std::size_t{1} << std::min(d, 30)) > rank_cap(256))
    throw Error(ErrorKind::ResourceCap, "BW level " + std::to_string(d) + " exceeds the rank cap");
  {
    std::lock_guard<std::mutex> lock(bw_mutex());
    auto it = bw_cache().find(d);
    if (it != bw_cache().end()) return it->second;
  }
  BWPtr bw = build_uncached(d);
  std::lock_guard<std::mutex> lock(bw_mutex());
  return bw_cache().emplace(d, bw).first->second;
}

ScaledLattice sultry_twist(const ScaledLattice& l, const IntMatrix& f, int k, bool check_invariant) {
  const std::size_t n = l.ambient_dim();
  if (f.rows() != n || f.cols() != n) throw Error(ErrorKind::InvalidParameter, "fourvolution has the wrong size");
  if (check_invariant) {
    try {
      basis_action(l, to_rational(f));
    } catch (const Error&) {
      throw Error(ErrorKind::NotInvariant, "fourvolution does not preserve the lattice");
    }
  }
  if (k == 0) return l;
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix step = k > 0 ? id - f : id + f;
  IntMatrix rows = l.basis();
  for (int i = 0; i < std::abs(k); ++i) rows = rows * step;
  return ScaledLattice::from_generators(rows, l.denom_exp() + (k < 0 ? -k : 0));
}

ScaledLattice twist(const BWLattice& bw, int k) { return sultry_twist(bw.lattice, bw.f, k, false); }

int duality_level(const BWLattice& bw) {
  ScaledLattice dual = dual_lattice(bw.lattice);
  for (int r = 0; r <= 1; ++r)
    if (dual.same_span(twist(bw, -r))) return r;
  throw Error(ErrorKind::NoDualityLevel, "dual lattice matches neither L nor L[-1]");
}

Integer minimal_vector_count(int d) {
  if (d < 0) throw Error(ErrorKind::InvalidParameter, "negative level");
  Integer n = 1;
  for (int i = 1; i <= d; ++i) n *= (Integer(1) << i) + 2;
  return n;
}

GenerationChecks generation_checks(const BWLattice& bw) {
  if (bw.d < 2) throw Error(ErrorKind::InvalidParameter, "generation checks need construction data (d >= 2)");
  GenerationChecks g;
  const ScaledLattice& l = bw.lattice;
  const std::vector<ScaledLattice> parts = {bw.m1, bw.m2, bw.m12, bw.m12p};
  g.three_quarter = true;
  for (int skip = 0; skip < 4; ++skip) {
    std::vector<ScaledLattice> three;
    for (int i = 0; i < 4; ++i)
      if (i != skip) three.push_back(parts[i]);
    if (!lattice_sum(three).same_span(l)) g.three_quarter = false;
  }
  ScaledLattice plus_t = eigenlattice(l, {to_rational(bw.t1)}, 1);
  ScaledLattice plus_u = eigenlattice(l, {to_rational(bw.t12)}, 1);
  g.two_quarter = lattice_sum(plus_t, plus_u).same_span(l);

  const std::size_t n = l.ambient_dim();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix fd = bw.t1 * bw.t12;
  const bool fourvolution = (fd * fd) == -id;
  ScaledLattice lhs = apply_matrix(l, id - fd);
  ScaledLattice rhs = lattice_sum({apply_matrix(l, bw.t1 - id), apply_matrix(l, bw.t12 - id), apply_matrix(l, bw.t1 + id)});
  g.commutator_dense = fourvolution && lhs.same_span(rhs);
  return g;
}

namespace {

struct MatKey {
  std::vector<std::int64_t> v;
  bool operator==(const MatKey& o) const { return v == o.v; }
};
struct MatHash {
  std::size_t operator()(const MatKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : k.v) h = (h ^ static_cast<std::size_t>(x + 3)) * 1099511628211ull;
    return h;
  }
};

MatKey to_key(const IntMatrix& m) {
  MatKey k;
  k.v.reserve(m.rows() * m.cols());
  for (const auto& x : m.data()) k.v.push_back(x.get_si());
  return k;
}

std::vector<std::int64_t> mul(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b, std::size_t n) {
  std::vector<std::int64_t> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t x = a[i * n + k];
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += x * b[k * n + j];
    }
  return c;
}

std::vector<MatKey> closure(const std::vector<IntMatrix>& gens, std::size_t n, std::size_t cap) {
  std::vector<MatKey> gk;
  for (const auto& g : gens) gk.push_back(to_key(g));
  std::unordered_set<MatKey, MatHash> seen;
  std::vector<MatKey> elems;
  MatKey id{std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) id.v[i * n + i] = 1;
  seen.insert(id);
  elems.push_back(id);
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gk) {
      MatKey p{mul(elems[head].v, g.v, n)};
      if (seen.insert(p).second) {
        elems.push_back(p);
        if (elems.size() > cap) throw Error(ErrorKind::TooLarge, "group closure exceeds the cap");
      }
    }
  }
  return elems;
}

}  // namespace

std::vector<IntMatrix> lower_group_elements(const BWLattice& bw, std::size_t cap) {
  const std::size_t n = bw.lattice.ambient_dim();
  std::vector<IntMatrix> out;
  for (const auto& e : closure(bw.lower_generators, n, cap)) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = static_cast<long>(e.v[i]);
    out.push_back(m);
  }
  return out;
}

LowerGroupReport lower_group_closure(const BWLattice& bw, std::size_t cap) {
  const std::size_t n = bw.lattice.ambient_dim();
  auto elems = closure(bw.lower_generators, n, cap);
  LowerGroupReport rep;
  rep.order = elems.size();
  MatKey id{std::vector<std::int64_t>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) id.v[i * n + i] = 1;
  MatKey neg{id.v};
  for (auto& x : neg.v) x = -x;
  auto central_pm1 = [&](const MatKey& k) { return k == id || k == neg; };

  std::vector<MatKey> gk;
  for (const auto& g : bw.lower_generators) gk.push_back(to_key(g));
  std::size_t center = 0;
  bool has_neg = false;
  for (const auto& e : elems) {
    bool central = true;
    for (const auto& g : gk)
      if (mul(e.v, g.v, n) != mul(g.v, e.v, n)) {
        central = false;
        break;
      }
    if (central) {
      ++center;
      if (e == neg) has_neg = true;
    }
  }
  rep.center_is_pm1 = center == 2 && has_neg;
  rep.squares_central = true;
  for (const auto& e : elems)
    if (!central_pm1(MatKey{mul(e.v, e.v, n)})) rep.squares_central = false;
  rep.commutators_central = true;
  for (const auto& a : gk)
    for (const auto& b : gk) {
      auto ab = mul(a.v, b.v, n), ba = mul(b.v, a.v, n);
      // [a,b] = +-1 iff ab = +-ba
      auto nba = ba;
      for (auto& x : nba) x = -x;
      if (ab != ba && ab != nba) rep.commutators_central = false;
    }
  ScaledLattice l1 = twist(bw, 1);
  rep.trivial_on_quotient = true;
  for (const auto& g : bw.lower_generators) {
    ScaledLattice img = apply_matrix(bw.lattice, g - IntMatrix::identity(n));
    if (img.rank() > 0 && !l1.contains(img)) rep.trivial_on_quotient = false;
  }
  const std::size_t expected = std::size_t{1} << (1 + 2 * bw.d);
  rep.is_extraspecial_like = rep.center_is_pm1 && rep.squares_central && rep.commutators_central && rep.order == expected;
  return rep;
}

int frame_d_invariant(const VectorSet& frame, const ScaledLattice& l, const ScaledLattice& m) {
  if (!l.contains(m) || !m.contains(scale_by_two_power(l, 1)))
    throw Error(ErrorKind::NotBetween, "need 2L <= M <= L");
  auto fc = l.coordinates(frame.to_matrix(), frame.denom_exp());
  if (!fc) throw Error(ErrorKind::InvalidParameter, "frame vectors are not in the lattice");
  auto mc = l.coordinates(m.basis(), m.denom_exp());
  return static_cast<int>(rank_mod2(mc->vstack(*fc)) - rank_mod2(*mc));
}

}  // namespace bwlat

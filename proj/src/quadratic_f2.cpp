#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "bwlat/washtenaw_ypsilanti.hpp"

namespace bwlat {

namespace {

Word low_mask(int n) { return n >= 64 ? ~Word{0} : (Word{1} << n) - 1; }

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % n;
}

BitMatrix transvection(const QuadraticSpaceF2& v, Word u) {
  BitMatrix t(v.dim());
  for (int i = 0; i < v.dim(); ++i) {
    const Word e = Word{1} << i;
    t[i] = v.bilinear(e, u) ? e ^ u : e;
  }
  return t;
}

// dim(A cap W^perp) for A spanned by independent rows
int perp_intersection_dim(const QuadraticSpaceF2& v, const std::vector<Word>& a, const std::vector<Word>& w) {
  std::vector<Word> pairing;
  for (Word x : a) {
    Word row = 0;
    for (std::size_t j = 0; j < w.size(); ++j)
      if (v.bilinear(x, w[j])) row |= Word{1} << j;
    pairing.push_back(row);
  }
  return static_cast<int>(bit_rank(a)) - static_cast<int>(bit_rank(pairing));
}

std::vector<Word> image(const BitMatrix& g, const std::vector<Word>& rows) {
  std::vector<Word> out;
  out.reserve(rows.size());
  for (Word r : rows) out.push_back(apply(g, r));
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::uint64_t pack(const BitMatrix& g, int n) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < g.size(); ++i) key |= g[i] << (i * n);
  return key;
}

// Small generating set of the subgroup, built greedily.
std::vector<BitMatrix> generators_of(const std::vector<BitMatrix>& group, int n) {
  std::vector<BitMatrix> gens;
  std::unordered_map<std::uint64_t, bool> closure{{pack(bit_identity(n), n), true}};
  std::vector<BitMatrix> elems{bit_identity(n)};
  for (const auto& g : group) {
    if (closure.count(pack(g, n))) continue;
    gens.push_back(g);
    for (std::size_t i = 0; i < elems.size(); ++i)
      for (const auto& s : gens) {
        BitMatrix x = compose(elems[i], s);
        if (closure.emplace(pack(x, n), true).second) elems.push_back(x);
      }
  }
  return gens;
}

std::vector<BitMatrix> general_linear_group(int n) {
  if (n > 4) throw Error(ErrorKind::TooLarge, "general linear enumeration is capped at dimension 4");
  std::vector<BitMatrix> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    BitMatrix g(n);
    for (int i = 0; i < n; ++i) g[i] = (code >> (i * n)) & low_mask(n);
    if (bit_rank(g) == static_cast<std::size_t>(n)) out.push_back(g);
  }
  return out;
}

}  // namespace

QuadraticSpaceF2::QuadraticSpaceF2(int dim, Word diag, std::vector<Word> polar)
    : dim_(dim), diag_(diag), polar_(std::move(polar)) {
  if (dim < 0 || dim > 64 || static_cast<int>(polar_.size()) != dim)
    throw Error(ErrorKind::InvalidParameter, "quadratic space dimension must be at most 64");
  for (int i = 0; i < dim; ++i) {
    if ((polar_[i] >> i) & 1) throw Error(ErrorKind::InvalidParameter, "polar form must be alternating");
    for (int j = 0; j < dim; ++j)
      if (((polar_[i] >> j) & 1) != ((polar_[j] >> i) & 1))
        throw Error(ErrorKind::InvalidParameter, "polar form must be symmetric");
  }
}

QuadraticSpaceF2 QuadraticSpaceF2::plus_type(int b) {
  std::vector<Word> polar(2 * b);
  for (int i = 0; i < b; ++i) {
    polar[2 * i] = Word{1} << (2 * i + 1);
    polar[2 * i + 1] = Word{1} << (2 * i);
  }
  return QuadraticSpaceF2(2 * b, 0, polar);
}

int QuadraticSpaceF2::q(Word x) const {
  int s = __builtin_popcountll(x & diag_);
  for (Word y = x; y; y &= y - 1) {
    const int i = __builtin_ctzll(y);
    s += __builtin_popcountll(polar_[i] & x & ~low_mask(i + 1));
  }
  return s & 1;
}

int QuadraticSpaceF2::bilinear(Word x, Word y) const {
  int s = 0;
  for (; x; x &= x - 1) s += __builtin_popcountll(polar_[__builtin_ctzll(x)] & y);
  return s & 1;
}

std::vector<Word> QuadraticSpaceF2::hyperbolic_basis() const {
  std::vector<Word> rest;
  for (int i = 0; i < dim_; ++i) rest.push_back(Word{1} << i);
  std::vector<Word> out;
  while (!rest.empty()) {
    Word e = 0;
    for (Word v : rest)
      if (q(v) == 0) {
        e = v;
        break;
      }
    for (std::size_t i = 0; i < rest.size() && !e; ++i)
      for (std::size_t j = i + 1; j < rest.size() && !e; ++j)
        if (q(rest[i] ^ rest[j]) == 0) e = rest[i] ^ rest[j];
    if (!e && rest.size() >= 3) e = rest[0] ^ rest[1] ^ rest[2];
    if (!e) throw Error(ErrorKind::InvalidParameter, "quadratic space is not of plus type");
    Word f = 0;
    for (Word v : rest)
      if (bilinear(e, v)) {
        f = v;
        break;
      }
    if (!f) throw Error(ErrorKind::InvalidParameter, "quadratic form is degenerate");
    if (q(f)) f ^= e;
    out.push_back(e);
    out.push_back(f);
    std::vector<Word> next;
    for (Word v : rest) {
      Word w = v;
      if (bilinear(v, f)) w ^= e;
      if (bilinear(v, e)) w ^= f;
      next.push_back(w);
    }
    // keep an independent spanning set of <e, f>^perp
    std::vector<Word> basis, span{e, f};
    for (Word w : next) {
      span.push_back(w);
      if (bit_rank(span) == basis.size() + 3) {
        basis.push_back(w);
      } else {
        span.pop_back();
      }
    }
    rest = basis;
  }
  return out;
}

std::uint64_t QuadraticSpaceF2::zero_count() const {
  if (dim_ > 24) throw Error(ErrorKind::TooLarge, "zero count is exhaustive; dimension must be at most 24");
  std::uint64_t n = 0;
  for (Word x = 0; x < (Word{1} << dim_); ++x) n += q(x) == 0;
  return n;
}

Word apply(const BitMatrix& m, Word x) {
  Word y = 0;
  for (; x; x &= x - 1) y ^= m[__builtin_ctzll(x)];
  return y;
}

BitMatrix compose(const BitMatrix& first, const BitMatrix& second) {
  BitMatrix out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = apply(second, first[i]);
  return out;
}

BitMatrix bit_identity(int n) {
  BitMatrix m(n);
  for (int i = 0; i < n; ++i) m[i] = Word{1} << i;
  return m;
}

std::size_t bit_rank(std::vector<Word> rows) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i]) continue;
    const Word pivot = rows[i] & (~rows[i] + 1);
    ++rank;
    for (std::size_t j = i + 1; j < rows.size(); ++j)
      if (rows[j] & pivot) rows[j] ^= rows[i];
  }
  return rank;
}

bool is_isometry(const QuadraticSpaceF2& v, const BitMatrix& g) {
  const int n = v.dim();
  if (static_cast<int>(g.size()) != n || bit_rank(g) != static_cast<std::size_t>(n)) return false;
  for (int i = 0; i < n; ++i) {
    const Word ei = Word{1} << i;
    if (v.q(g[i]) != v.q(ei)) return false;
    for (int j = i + 1; j < n; ++j)
      if (v.bilinear(g[i], g[j]) != v.bilinear(ei, Word{1} << j)) return false;
  }
  return true;
}

bool avoids(const BitMatrix& zeta, const std::vector<Word>& w1, const std::vector<Word>& w2) {
  std::vector<Word> rows = image(zeta, w1);
  const std::size_t a = bit_rank(rows), b = bit_rank(w2);
  rows.insert(rows.end(), w2.begin(), w2.end());
  return bit_rank(rows) == a + b;
}

AvoidingMap sample_avoiding_map(const QuadraticSpaceF2& v, const std::vector<Word>& w1, const std::vector<Word>& w2,
                                std::uint64_t seed, std::optional<int> demand_k, std::uint64_t max_attempts) {
  const int n = v.dim();
  std::mt19937_64 rng(seed);
  AvoidingMap out;
  out.seed = seed;
  const int steps = 2 * n + 2;
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    BitMatrix g = bit_identity(n);
    if (attempt > 1)
      for (int s = 0; s < steps; ++s) {
        Word u;
        do u = uniform_below(rng, low_mask(n)) + 1;
        while (v.q(u) != 1);
        g = compose(g, transvection(v, u));
      }
    if (!avoids(g, w1, w2)) continue;
    if (demand_k && perp_intersection_dim(v, image(g, w1), w2) != *demand_k) continue;
    out.zeta = g;
    out.avoiding = true;
    out.attempts = attempt;
    return out;
  }
  throw Error(ErrorKind::Exhausted, "no avoiding map found within " + std::to_string(max_attempts) + " attempts");
}

std::vector<BitMatrix> orthogonal_group_plus(int b) {
  if (b < 1 || b > 3) throw Error(ErrorKind::TooLarge, "orthogonal group enumeration needs 1 <= b <= 3");
  const QuadraticSpaceF2 v = QuadraticSpaceF2::plus_type(b);
  const int n = 2 * b;
  std::vector<BitMatrix> out;
  BitMatrix g(n);
  // images of e_1, f_1, e_2, f_2, ...: singular, hyperbolic in pairs, orthogonal across pairs
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      out.push_back(g);
      return;
    }
    for (Word x = 1; x <= low_mask(n); ++x) {
      if (v.q(x) != 0) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = v.bilinear(g[j], x) == v.bilinear(Word{1} << j, Word{1} << i);
      if (!ok) continue;
      g[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

SurveyReport avoiding_maps_survey(int b, int a, bool general_linear) {
  if (a < 1 || a > b) throw Error(ErrorKind::InvalidParameter, "need 1 <= a <= b");
  if (b > 3 || (general_linear && b > 2)) throw Error(ErrorKind::TooLarge, "exhaustive survey is capped at b = 3");
  const int n = 2 * b;
  const QuadraticSpaceF2 v = QuadraticSpaceF2::plus_type(b);
  const std::vector<BitMatrix> group = general_linear ? general_linear_group(n) : orthogonal_group_plus(b);
  std::vector<Word> w;
  for (int i = 0; i < a; ++i) w.push_back(Word{1} << (2 * i));

  SurveyReport rep{b, a, general_linear, group.size(), 0, {}};
  std::vector<BitMatrix> stabilizer;
  for (const auto& g : group) {
    std::vector<Word> rows = image(g, w);
    rows.insert(rows.end(), w.begin(), w.end());
    if (bit_rank(rows) == static_cast<std::size_t>(a)) stabilizer.push_back(g);
  }
  rep.stabilizer_order = stabilizer.size();
  const std::vector<BitMatrix> hgens = generators_of(stabilizer, n);

  std::map<int, std::vector<BitMatrix>> classes;
  for (const auto& g : group)
    if (avoids(g, w, w)) classes[perp_intersection_dim(v, image(g, w), w)].push_back(g);

  for (auto& [k, members] : classes) {
    SurveyClass c;
    c.k = k;
    c.size = members.size();
    c.divisible_by_h = c.size % rep.stabilizer_order == 0;
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < members.size(); ++i) index[pack(members[i], n)] = i;
    UnionFind left(members.size()), both(members.size());
    for (std::size_t i = 0; i < members.size(); ++i)
      for (const auto& h : hgens) {
        const std::size_t l = index.at(pack(compose(h, members[i]), n));
        left.unite(i, l);
        both.unite(i, l);
        // general linear stabilizers need not preserve W2^perp, so k is only right-invariant for isometries
        if (!general_linear) both.unite(i, index.at(pack(compose(members[i], h), n)));
      }
    std::map<std::size_t, std::size_t> left_sizes;
    std::set<std::size_t> both_roots;
    for (std::size_t i = 0; i < members.size(); ++i) {
      ++left_sizes[left.find(i)];
      both_roots.insert(both.find(i));
    }
    c.one_sided_orbits = left_sizes.size();
    c.one_sided_regular = std::all_of(left_sizes.begin(), left_sizes.end(),
                                      [&](const auto& kv) { return kv.second == rep.stabilizer_order; });
    c.two_sided_orbits = general_linear ? 0 : both_roots.size();
    rep.classes.push_back(c);
  }
  return rep;
}

}  // namespace bwlat

#include "bwlat/gf2_codes.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "bwlat/error.hpp"

namespace bwlat {

namespace {

void check_length(int n) {
  if (n < 0) throw Error(ErrorKind::InvalidParameter, "negative code length");
  if (n > 64) throw Error(ErrorKind::TooLarge, "code length above 64 is not supported");
}

int lowest_bit(Word w) { return __builtin_ctzll(w); }

}  // namespace

BinaryCode::BinaryCode(int length, const std::vector<Word>& words) : length_(length) {
  check_length(length);
  for (Word w : words) {
    if ((w & ~full_mask()) != 0) throw Error(ErrorKind::InvalidParameter, "word exceeds code length");
    Word r = reduce(w);
    if (r == 0) continue;
    int p = lowest_bit(r);
    for (auto& g : gens_)
      if ((g >> p) & 1) g ^= r;
    gens_.push_back(r);
    pivots_.push_back(p);
  }
  std::vector<std::size_t> order(gens_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
  std::vector<Word> g2;
  std::vector<int> p2;
  for (auto i : order) {
    g2.push_back(gens_[i]);
    p2.push_back(pivots_[i]);
  }
  gens_ = std::move(g2);
  pivots_ = std::move(p2);
}

Word BinaryCode::reduce(Word w) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if ((w >> pivots_[i]) & 1) w ^= gens_[i];
  return w;
}

bool BinaryCode::contains(Word w) const { return (w & ~full_mask()) == 0 && reduce(w) == 0; }

void BinaryCode::for_each_codeword(const std::function<void(Word)>& fn) const {
  const int k = dimension();
  if (k > 40) throw Error(ErrorKind::TooLarge, "too many codewords to enumerate");
  Word w = 0;
  fn(w);
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    w ^= gens_[__builtin_ctzll(i)];
    fn(w);
  }
}

std::vector<Word> BinaryCode::codewords() const {
  std::vector<Word> out;
  out.reserve(std::size_t{1} << dimension());
  for_each_codeword([&](Word w) { out.push_back(w); });
  return out;
}

BinaryCode simplex(int r) {
  if (r < 2) throw Error(ErrorKind::InvalidParameter, "simplex code needs r >= 2");
  const int n = (1 << r) - 1;
  check_length(n);
  std::vector<Word> rows(r, 0);
  for (int col = 0; col < n; ++col) {
    const int v = col + 1;
    for (int i = 0; i < r; ++i)
      if ((v >> i) & 1) rows[i] |= Word{1} << col;
  }
  return BinaryCode(n, rows);
}

BinaryCode hamming(int r) {
  if (r < 2) throw Error(ErrorKind::InvalidParameter, "Hamming code needs r >= 2");
  return annihilator(simplex(r));
}

BinaryCode extended_hamming(int r) {
  if (r < 2) throw Error(ErrorKind::InvalidParameter, "extended Hamming code needs r >= 2");
  BinaryCode h = hamming(r);
  const int n = h.length();
  std::vector<Word> rows;
  for (Word g : h.generators()) rows.push_back(g | (Word(weight(g) & 1) << n));
  return BinaryCode(n + 1, rows);
}

BinaryCode extended_simplex(int r) {
  if (r < 2) throw Error(ErrorKind::InvalidParameter, "extended simplex code needs r >= 2");
  return annihilator(extended_hamming(r));
}

BinaryCode annihilator(const BinaryCode& c) {
  const int n = c.length();
  const auto& g = c.generators();
  const auto& piv = c.pivots();
  std::vector<bool> is_pivot(n, false);
  for (int p : piv) is_pivot[p] = true;
  std::vector<Word> rows;
  for (int j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Word w = Word{1} << j;
    for (std::size_t i = 0; i < g.size(); ++i)
      if ((g[i] >> j) & 1) w |= Word{1} << piv[i];
    rows.push_back(w);
  }
  return BinaryCode(n, rows);
}

BinaryCode direct_sum(const BinaryCode& a, const BinaryCode& b) {
  std::vector<Word> rows = a.generators();
  for (Word g : b.generators()) rows.push_back(g << a.length());
  return BinaryCode(a.length() + b.length(), rows);
}

std::vector<int> weight_distribution(const BinaryCode& c) {
  if (c.dimension() > 24) throw Error(ErrorKind::TooLarge, "exhaustive weight enumeration limited to dimension 24");
  std::vector<int> dist(c.length() + 1, 0);
  c.for_each_codeword([&](Word w) { ++dist[weight(w)]; });
  return dist;
}

CodeProperties code_properties(const BinaryCode& c) {
  if (c.dimension() > 24) throw Error(ErrorKind::TooLarge, "exhaustive weight enumeration limited to dimension 24");
  CodeProperties p;
  const auto dist = weight_distribution(c);
  for (int w = 1; w <= c.length(); ++w)
    if (dist[w] > 0) {
      p.min_weight = w;
      break;
    }
  p.is_doubly_even = true;
  for (int w = 0; w <= c.length(); ++w)
    if (dist[w] > 0 && w % 4 != 0) p.is_doubly_even = false;
  p.is_self_orthogonal = true;
  const auto& g = c.generators();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i; j < g.size(); ++j)
      if (dot2(g[i], g[j])) p.is_self_orthogonal = false;

  // Components of the fundamental graph of the reduced echelon basis.
  const int n = c.length();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (std::size_t i = 0; i < g.size(); ++i) {
    const int pv = c.pivots()[i];
    for (Word w = g[i]; w; w &= w - 1) parent[find(lowest_bit(w))] = find(pv);
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);
  for (int j = 0; j < n; ++j) {
    int root = find(j);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(j);
  }
  p.decomposition_partition = blocks;
  p.is_indecomposable = c.dimension() > 0 && blocks.size() == 1;
  return p;
}

BinaryCode code_from_affine_codim2(int d) {
  if (d < 2) throw Error(ErrorKind::InvalidParameter, "codimension-2 code needs d >= 2");
  if (d > 6) throw Error(ErrorKind::TooLarge, "codimension-2 code limited to d <= 6");
  const int n = 1 << d;
  std::vector<Word> rows;
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int alpha = 0; alpha < 2; ++alpha)
        for (int beta = 0; beta < 2; ++beta) {
          Word w = 0;
          for (int x = 0; x < n; ++x)
            if ((__builtin_popcount(a & x) & 1) == alpha && (__builtin_popcount(b & x) & 1) == beta)
              w |= Word{1} << x;
          rows.push_back(w);
        }
  return BinaryCode(n, rows);
}

BinaryCode sign_code(int a) {
  if (a < 0) throw Error(ErrorKind::InvalidParameter, "negative dimension");
  if (a >= 2) return code_from_affine_codim2(a);
  const int n = 1 << a;
  std::vector<Word> rows;
  for (int i = 0; i < n; ++i) rows.push_back(Word{1} << i);
  return BinaryCode(n, rows);
}

BinaryCode indecomposable_doubly_even(int t) {
  if (t < 3) throw Error(ErrorKind::InvalidParameter, "indecomposable doubly even code needs t >= 3");
  if (t > 6) throw Error(ErrorKind::TooLarge, "code length above 64 is not supported");
  BinaryCode h = extended_hamming(3);
  if (t == 3) return h;
  const int blocks = 1 << (t - 3);
  std::vector<Word> sum_rows;
  Word v = 0;
  for (int b = 0; b < blocks; ++b) {
    for (Word g : h.generators()) sum_rows.push_back(g << (8 * b));
    v |= Word{3} << (8 * b);
  }
  // subspace of the block sum annihilating v, via one elimination step
  std::vector<Word> rows;
  Word odd = 0;
  for (Word g : sum_rows) {
    if (!dot2(g, v)) {
      rows.push_back(g);
    } else if (odd == 0) {
      odd = g;
    } else {
      rows.push_back(g ^ odd);
    }
  }
  rows.push_back(v);
  return BinaryCode(8 * blocks, rows);
}

namespace {

std::vector<std::uint32_t> xor_basis(const std::vector<std::uint32_t>& vs) {
  std::vector<std::uint32_t> basis;  // descending, distinct leading bits
  for (auto v : vs) {
    for (auto b : basis) v = std::min(v, v ^ b);
    if (v) {
      basis.push_back(v);
      std::sort(basis.begin(), basis.end(), std::greater<>());
    }
  }
  return basis;
}

}  // namespace

bool AffineSubspace::contains(std::uint32_t x) const {
  std::uint32_t y = x ^ basepoint;
  for (auto b : xor_basis(direction_basis)) y = std::min(y, y ^ b);
  return y == 0;
}

std::vector<std::uint32_t> AffineSubspace::points() const {
  std::vector<std::uint32_t> pts(std::size_t{1} << direction_basis.size());
  pts[0] = basepoint;
  for (std::size_t i = 1; i < pts.size(); ++i) pts[i] = pts[i & (i - 1)] ^ direction_basis[__builtin_ctzll(i)];
  return pts;
}

bool is_affine_subspace(const std::vector<std::uint32_t>& points, int d) {
  if (points.empty()) return false;
  const std::size_t s = points.size();
  if ((s & (s - 1)) != 0) return false;
  std::vector<std::uint32_t> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (auto p : sorted)
    if (d < 32 && (p >> d) != 0) return false;
  std::vector<std::uint32_t> diffs;
  for (auto p : points) diffs.push_back(p ^ points[0]);
  return (std::size_t{1} << xor_basis(diffs).size()) == s;
}

void for_each_affine_subspace(int d, int a, const std::function<void(const AffineSubspace&)>& fn) {
  if (a < 0 || a > d) return;
  // linear subspaces via reduced echelon forms: choose pivot set, fill free entries
  std::vector<int> pivots(a);
  std::function<void(int, int)> choose = [&](int idx, int start) {
    if (idx == a) {
      std::vector<std::pair<int, int>> free_slots;  // (row, column)
      for (int i = 0; i < a; ++i)
        for (int col = pivots[i] + 1; col < d; ++col)
          if (std::find(pivots.begin(), pivots.end(), col) == pivots.end()) free_slots.emplace_back(i, col);
      const std::uint64_t fill_count = std::uint64_t{1} << free_slots.size();
      std::uint32_t pivot_mask = 0;
      for (int p : pivots) pivot_mask |= 1u << p;
      for (std::uint64_t fill = 0; fill < fill_count; ++fill) {
        AffineSubspace s;
        s.ambient_dim = d;
        s.direction_basis.assign(a, 0);
        for (int i = 0; i < a; ++i) s.direction_basis[i] = 1u << pivots[i];
        for (std::size_t k = 0; k < free_slots.size(); ++k)
          if ((fill >> k) & 1) s.direction_basis[free_slots[k].first] |= 1u << free_slots[k].second;
        // coset representatives vanish on the pivot coordinates
        for (std::uint32_t x = 0; x < (1u << d); ++x) {
          if (x & pivot_mask) continue;
          s.basepoint = x;
          fn(s);
        }
      }
      return;
    }
    for (int p = start; p < d; ++p) {
      pivots[idx] = p;
      choose(idx + 1, p + 1);
    }
  };
  choose(0, 0);
}

void write_code(std::ostream& os, const BinaryCode& c) {
  os << "code " << c.length() << ' ' << c.dimension() << '\n';
  for (Word g : c.generators()) {
    for (int i = 0; i < c.length(); ++i) os << ((g >> i) & 1 ? '1' : '0');
    os << '\n';
  }
}

BinaryCode read_code(std::istream& is) {
  std::string tag;
  int n = -1, k = -1;
  if (!(is >> tag >> n >> k) || tag != "code" || n < 0 || k < 0)
    throw Error(ErrorKind::Parse, "expected header 'code <n> <k>'");
  std::vector<Word> rows;
  for (int j = 0; j < k; ++j) {
    std::string line;
    if (!(is >> line) || static_cast<int>(line.size()) != n)
      throw Error(ErrorKind::Parse, "code row " + std::to_string(j) + " has wrong length");
    Word w = 0;
    for (int i = 0; i < n; ++i) {
      if (line[i] == '1') w |= Word{1} << i;
      else if (line[i] != '0') throw Error(ErrorKind::Parse, "code rows must contain only 0 and 1");
    }
    rows.push_back(w);
  }
  BinaryCode c(n, rows);
  if (c.dimension() != k) throw Error(ErrorKind::Parse, "code rows are linearly dependent");
  return c;
}

}  // namespace bwlat

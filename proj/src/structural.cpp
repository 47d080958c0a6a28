#include <algorithm>
#include <array>

#include "bwlat/barnes_wall.hpp"

namespace bwlat {

namespace {

int floor_div2(int x) { return x >= 0 ? x / 2 : -((-x + 1) / 2); }

void check_stream_cap(int d) {
  if ((std::size_t{1} << d) > rank_cap(64))
    throw Error(ErrorKind::ResourceCap, "structural streaming is capped at d = 6");
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ull;
  return h;
}

bool first_nonzero_positive(std::span<const std::int64_t> v) {
  for (auto x : v)
    if (x != 0) return x > 0;
  return false;
}

VectorSet positive_halves(const VectorSet& vs) {
  VectorSet out(vs.dim(), vs.denom_exp());
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (first_nonzero_positive(vs[i])) out.push_back(vs[i]);
  return out;
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

int log2_if_power(std::int64_t v) {
  if (v <= 0 || (v & (v - 1)) != 0) return -1;
  return 63 - __builtin_clzll(static_cast<unsigned long long>(v));
}

}  // namespace

int anchor_level(int d) { return -(d / 2); }

int structural_denom_exp(int d, int q) {
  const int p = anchor_level(d);
  int e = 0;
  for (int a = 0; a <= d; ++a)
    if (((p + a - q) % 2 + 2) % 2 == 0) e = std::max(e, (p + a - q) / 2);
  return e;
}

Labeling compute_labeling(const BWLattice& bw) {
  Labeling lab;
  lab.d = bw.d;
  const std::size_t n = std::size_t{1} << bw.d;
  lab.label_of_coordinate.assign(n, 0);
  lab.coordinate_of_label.assign(n, 0);
  lab.sign_of_label.assign(n, 1);
  std::vector<int> sign_of_coordinate(n, 1);
  if (bw.d == 1) {
    lab.label_of_coordinate = {0, 1};
  } else {
    Labeling half = compute_labeling(*bw.child);
    const std::size_t h = n / 2;
    const std::uint32_t v0 = std::uint32_t{1} << (bw.d - 1);
    std::vector<bool> assigned(n, false);
    for (std::size_t i = 0; i < h; ++i) {
      lab.label_of_coordinate[i] = half.label_of_coordinate[i];
      sign_of_coordinate[i] = half.sign_of_label[half.label_of_coordinate[i]];
      assigned[i] = true;
    }
    // transport the first half-frame by the gluing involution
    for (std::size_t i = 0; i < h; ++i) {
      std::size_t target = n;
      int sigma = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(bw.t12p(i, j)) != 0) {
          if (target != n || abs(bw.t12p(i, j)) != 1)
            throw Error(ErrorKind::InvalidParameter, "gluing involution is not a signed permutation");
          target = j;
          sigma = sgn(bw.t12p(i, j));
        }
      if (target == n || assigned[target]) throw Error(ErrorKind::InvalidParameter, "gluing involution does not swap halves");
      lab.label_of_coordinate[target] = lab.label_of_coordinate[i] ^ v0;
      sign_of_coordinate[target] = sign_of_coordinate[i] * sigma;
      assigned[target] = true;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    lab.coordinate_of_label[lab.label_of_coordinate[i]] = static_cast<std::uint32_t>(i);
    lab.sign_of_label[lab.label_of_coordinate[i]] = sign_of_coordinate[i];
  }
  return lab;
}

void for_each_minimal_vector(const BWLattice& bw, const Labeling& lab, int q,
                             const std::function<void(std::span<const std::int64_t>)>& fn) {
  const int d = bw.d;
  check_stream_cap(d);
  const std::size_t n = std::size_t{1} << d;
  const int p = anchor_level(d);
  const int e = structural_denom_exp(d, q);
  if (e > 60 || std::abs(q) > 40) throw Error(ErrorKind::TooLarge, "twist level out of range");
  std::vector<std::int64_t> buf(n, 0);
  std::vector<std::uint32_t> coord;
  std::vector<std::int64_t> value;
  for (int a = 0; a <= d; ++a) {
    if (((p + a - q) % 2 + 2) % 2 != 0) continue;
    const int t = (p + a - q) / 2;
    if (e - t > 40) throw Error(ErrorKind::TooLarge, "twist level out of range");
    const std::int64_t mag = std::int64_t{1} << (e - t);
    const BinaryCode code = sign_code(a);
    const auto& gens = code.generators();
    const std::uint64_t words = std::uint64_t{1} << gens.size();
    for_each_affine_subspace(d, a, [&](const AffineSubspace& s) {
      const auto pts = s.points();
      coord.resize(pts.size());
      for (std::size_t j = 0; j < pts.size(); ++j) {
        coord[j] = lab.coordinate_of_label[pts[j]];
        buf[coord[j]] = lab.sign_of_label[pts[j]] * mag;
      }
      fn(buf);
      for (std::uint64_t i = 1; i < words; ++i) {
        for (Word g = gens[__builtin_ctzll(i)]; g; g &= g - 1) {
          auto& x = buf[coord[__builtin_ctzll(g)]];
          x = -x;
        }
        fn(buf);
      }
      for (auto c : coord) buf[c] = 0;
    });
  }
}

VectorSet minimal_vectors_structural(const BWLattice& bw, int q) {
  if ((std::size_t{1} << bw.d) > rank_cap(32))
    throw Error(ErrorKind::TooLarge, "materialized minimal vectors are capped at d = 5; stream instead");
  Labeling lab = compute_labeling(bw);
  VectorSet out(std::size_t{1} << bw.d, structural_denom_exp(bw.d, q));
  out.reserve(minimal_vector_count(bw.d).get_ui());
  for_each_minimal_vector(bw, lab, q, [&](std::span<const std::int64_t> v) { out.push_back(v); });
  return out;
}

StreamReport verify_structural_stream(const BWLattice& bw, int q) {
  check_stream_cap(bw.d);
  Labeling lab = compute_labeling(bw);
  ScaledLattice lq = twist(bw, q);
  MembershipTester tester(lq);
  const int e = structural_denom_exp(bw.d, q);
  const int p = anchor_level(bw.d);
  // norm 2^(q-p) at scale 4^e
  const int norm_exp = q - p + 2 * e;
  if (norm_exp < 0 || norm_exp > 62) throw Error(ErrorKind::TooLarge, "twist level out of range");
  const std::int64_t expected = std::int64_t{1} << norm_exp;
  StreamReport rep;
  rep.norm = ExactRational(Integer(1) << std::max(0, q - p), Integer(1) << std::max(0, p - q));
  std::vector<std::array<std::uint64_t, 2>> hashes;
  hashes.reserve(minimal_vector_count(bw.d).get_ui());
  for_each_minimal_vector(bw, lab, q, [&](std::span<const std::int64_t> v) {
    ++rep.count;
    std::int64_t nn = 0;
    std::uint64_t h1 = 0x12345678, h2 = 0x87654321;
    for (std::size_t i = 0; i < v.size(); ++i) {
      nn += v[i] * v[i];
      if (v[i] != 0) {
        h1 = mix(h1, (i << 32) ^ static_cast<std::uint64_t>(v[i]));
        h2 = mix(h2 ^ 0xabcdef, (static_cast<std::uint64_t>(v[i]) << 20) ^ i);
      }
    }
    if (nn != expected) ++rep.wrong_norm;
    if (!tester.contains(v, e)) ++rep.outside_lattice;
    hashes.push_back({h1, h2});
  });
  std::sort(hashes.begin(), hashes.end());
  for (std::size_t i = 1; i < hashes.size(); ++i)
    if (hashes[i] == hashes[i - 1]) ++rep.duplicates;
  return rep;
}

ExponentInterval exponent_interval(int d, int p, int q) {
  if (d < 2) throw Error(ErrorKind::InvalidParameter, "exponent intervals need d >= 2");
  ExponentInterval iv{d, p, q, {}};
  const int m = d / 2;
  const int r = d % 2;
  const int base = -floor_div2(-(p + q));
  // shifting p and q together by one shifts the set by one
  if (((p + q) % 2 + 2) % 2 == 0) {
    for (int k = 0; k <= m; ++k) iv.values.insert(base + k);
  } else {
    for (int k = -r; k <= m - 1; ++k) iv.values.insert(base + k);
  }
  return iv;
}

DotExponentReport realized_dot_exponents(const BWLattice& bw, int p, int q) {
  if (bw.d > 4 && rank_cap(16) < (std::size_t{1} << bw.d))
    throw Error(ErrorKind::TooLarge, "exhaustive dot products are capped at d = 4");
  VectorSet a = positive_halves(minimal_vectors_structural(bw, p));
  VectorSet b = positive_halves(minimal_vectors_structural(bw, q));
  const int shift = a.denom_exp() + b.denom_exp();
  DotExponentReport rep;
  std::set<std::int64_t> seen;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) seen.insert(std::abs(dot(a[i], b[j])));
  for (auto v : seen) {
    if (v == 0) {
      rep.zero_realized = true;
      continue;
    }
    int k = log2_if_power(v);
    if (k < 0) {
      rep.all_powers_of_two = false;
      continue;
    }
    rep.exponents.insert(k - shift);
  }
  return rep;
}

bool verify_dot_exponents(const BWLattice& bw, int p, int q) {
  DotExponentReport rep = realized_dot_exponents(bw, p, q);
  return rep.zero_realized && rep.all_powers_of_two && rep.exponents == exponent_interval(bw.d, p, q).values;
}

SultryFrame sultry_frame(const BWLattice& bw, std::span<const std::int64_t> x, int x_exp) {
  VectorSet mv = minimal_vectors_structural(bw, 0);
  const int e = std::max(mv.denom_exp(), x_exp);
  std::vector<std::int64_t> xs(x.begin(), x.end());
  for (auto& c : xs) c <<= (e - x_exp);
  VectorSet all = mv.rescaled(e);
  bool found = false;
  for (std::size_t i = 0; i < all.size() && !found; ++i) found = std::equal(xs.begin(), xs.end(), all[i].begin());
  if (!found) throw Error(ErrorKind::NotMinimal, "vector is not a minimal vector of the lattice");
  MembershipTester l1(twist(bw, 1));
  SultryFrame fr{VectorSet(all.dim(), e)};
  std::vector<std::int64_t> diff(xs.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto y = all[i];
    for (std::size_t j = 0; j < xs.size(); ++j) diff[j] = xs[j] - y[j];
    if (l1.contains(diff, e) && first_nonzero_positive(y)) fr.representatives.push_back(y);
  }
  return fr;
}

LayerReport layers(const BWLattice& bw, const SultryFrame& frame, int q) {
  VectorSet mv = minimal_vectors_structural(bw, q);
  const VectorSet& fr = frame.representatives;
  const int shift = mv.denom_exp() + fr.denom_exp();
  LayerReport rep;
  for (std::size_t i = 0; i < mv.size(); ++i) {
    std::int64_t common = 0;
    bool ok = true;
    for (std::size_t j = 0; j < fr.size() && ok; ++j) {
      std::int64_t v = std::abs(dot(mv[i], fr[j]));
      if (v == 0) continue;
      if (common == 0) common = v;
      ok = v == common;
    }
    int k = log2_if_power(common);
    if (!ok || k < 0) {
      rep.zoop2 = false;
      continue;
    }
    ++rep.layer_sizes[k - shift];
  }
  return rep;
}

}  // namespace bwlat

#include <algorithm>
#include <array>

#include "bwlat/barnes_wall.hpp"

namespace bwlat {

namespace {

using Coeffs = std::array<int, 8>;  // twice the coordinates in the x-frame

// Hamming code on positions 0..7 spanned by 11111111, {1,2,3,4}, {3,4,5,6}, {1,4,6,7}.
BinaryCode e8_code() {
  auto w = [](std::initializer_list<int> pos) {
    Word x = 0;
    for (int p : pos) x |= Word{1} << p;
    return x;
  };
  return BinaryCode(8, {0xFF, w({1, 2, 3, 4}), w({3, 4, 5, 6}), w({1, 4, 6, 7})});
}

Coeffs unit(int i) {
  Coeffs c{};
  c[i] = 2;
  return c;
}

Coeffs halves(std::initializer_list<std::pair<int, int>> entries) {
  Coeffs c{};
  for (auto [i, s] : entries) c[i] = s;
  return c;
}

std::vector<std::int64_t> ambient(const IntMatrix& x, const Coeffs& c) {
  std::vector<std::int64_t> v(x.cols(), 0);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) v[j] += c[i] * x(i, j).get_si();
  return v;
}

int coeff_dot(const Coeffs& a, const Coeffs& b) {
  int s = 0;
  for (int i = 0; i < 8; ++i) s += a[i] * b[i];
  return s;  // twice the inner product
}

bool positive_lead(const Coeffs& c) {
  for (int x : c)
    if (x) return x > 0;
  return false;
}

std::vector<Coeffs> root_coeffs(const ScaledLattice& e8, const IntMatrix& x) {
  VectorSet roots = certified_short_vectors(e8, ExactRational(2));
  std::vector<Coeffs> out;
  const int e = roots.denom_exp();
  for (std::size_t r = 0; r < roots.size(); ++r) {
    if (roots.raw_norm(r) != (std::int64_t{2} << (2 * e))) continue;
    Coeffs c{};
    for (int i = 0; i < 8; ++i) {
      // c_i = 2 * <v, x_i> / 2 = <v, x_i>
      std::int64_t s = 0;
      for (std::size_t j = 0; j < x.cols(); ++j) s += roots[r][j] * x(i, j).get_si();
      c[i] = static_cast<int>(s >> e);
    }
    if (positive_lead(c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool extend_frame(std::vector<Coeffs>& frame, const std::vector<Coeffs>& roots, std::size_t start) {
  if (frame.size() == 8) return true;
  for (std::size_t i = start; i < roots.size(); ++i) {
    bool ok = true;
    for (const auto& f : frame) ok = ok && coeff_dot(f, roots[i]) == 0;
    if (!ok) continue;
    frame.push_back(roots[i]);
    if (extend_frame(frame, roots, i + 1)) return true;
    frame.pop_back();
  }
  return false;
}

E8Frame make_frame(const std::string& name, const std::vector<Coeffs>& cs, const IntMatrix& x,
                   const ScaledLattice& e8, const ScaledLattice& twist1) {
  E8Frame fr{name, VectorSet(x.cols(), 1), false, -1};
  for (const auto& c : cs) fr.vectors.push_back(ambient(x, c));
  bool frame = cs.size() == 8;
  for (std::size_t i = 0; i < cs.size() && frame; ++i) {
    frame = coeff_dot(cs[i], cs[i]) == 4 && e8.contains_vector(fr.vectors[i], 1);
    for (std::size_t j = i + 1; j < cs.size() && frame; ++j) frame = coeff_dot(cs[i], cs[j]) == 0;
  }
  fr.is_frame = frame;
  if (frame) fr.d_invariant = frame_d_invariant(fr.vectors, e8, twist1);
  return fr;
}

}  // namespace

E8FrameReport e8_frame_orbits() {
  E8FrameReport rep;
  rep.e8 = lattice_from_code(1, e8_code());
  const IntMatrix x = orthogonal_frame(1, 8).basis();

  std::vector<Coeffs> twist_gens;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      Coeffs p = unit(i), m = unit(i);
      p[j] = 2;
      m[j] = -2;
      twist_gens.push_back(p);
      twist_gens.push_back(m);
    }
  twist_gens.push_back(Coeffs{1, 1, 1, 1, 1, 1, 1, 1});
  IntMatrix rows(twist_gens.size(), x.cols());
  for (std::size_t r = 0; r < twist_gens.size(); ++r) {
    auto v = ambient(x, twist_gens[r]);
    for (std::size_t j = 0; j < v.size(); ++j) rows(r, j) = v[j];
  }
  rep.e8_twist = ScaledLattice::from_generators(rows, 1);

  std::vector<Coeffs> f1;
  for (int i = 0; i < 8; ++i) f1.push_back(unit(i));

  std::vector<Coeffs> f2 = {unit(0), unit(5), unit(6), unit(7)};
  for (auto s : std::vector<std::array<int, 4>>{{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}})
    f2.push_back(halves({{1, s[0]}, {2, s[1]}, {3, s[2]}, {4, s[3]}}));

  // pairs P = {2,7}, Q = {4,5}, R = {3,6}
  std::vector<Coeffs> f3 = {unit(0), unit(1)};
  for (int b : {1, -1}) f3.push_back(halves({{2, 1}, {7, 1}, {4, b}, {5, b}}));
  for (int r : {1, -1}) f3.push_back(halves({{4, 1}, {5, -1}, {3, r}, {6, -r}}));
  for (int c : {1, -1}) f3.push_back(halves({{2, 1}, {7, -1}, {3, c}, {6, c}}));

  std::vector<Coeffs> f4 = {unit(0), halves({{1, 1}, {2, 1}, {3, 1}, {4, 1}}),
                            halves({{3, 1}, {4, -1}, {5, 1}, {6, 1}}), halves({{1, -1}, {4, 1}, {6, 1}, {7, 1}})};
  if (!extend_frame(f4, root_coeffs(rep.e8, x), 0)) throw Error(ErrorKind::Exhausted, "no frame extends the seed roots");

  rep.frames.push_back(make_frame("F1", f1, x, rep.e8, rep.e8_twist));
  rep.frames.push_back(make_frame("F2", f2, x, rep.e8, rep.e8_twist));
  rep.frames.push_back(make_frame("F3", f3, x, rep.e8, rep.e8_twist));
  rep.frames.push_back(make_frame("F4", f4, x, rep.e8, rep.e8_twist));
  return rep;
}

}  // namespace bwlat

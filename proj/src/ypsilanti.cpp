#include <istream>
#include <mutex>
#include <ostream>
#include <unordered_map>

#include "bwlat/washtenaw_ypsilanti.hpp"

namespace bwlat {

namespace {

const TwoSpecialLattice& desk_base() {
  static std::once_flag once;
  static TwoSpecialLattice base;
  std::call_once(once, [] { base = washtenaw_desk_analogue(); });
  return base;
}

// (coset, index into lower_minimal_vectors) for every minimal vector of M[-1]
std::vector<std::pair<Word, std::size_t>> coset_table(const TwoSpecialLattice& m, const DiscriminantSection& s) {
  if (!m.lower_minimal_vectors) throw Error(ErrorKind::TooLarge, "minimal vectors of M[-1] are not available");
  const VectorSet& mv = *m.lower_minimal_vectors;
  auto coords = s.upper.coordinates(mv.to_matrix(), mv.denom_exp());
  if (!coords) throw Error(ErrorKind::NotASublattice, "minimal vectors do not lie in M[-1]");
  std::vector<std::pair<Word, std::size_t>> out;
  out.reserve(mv.size());
  std::vector<Integer> row(coords->cols());
  for (std::size_t i = 0; i < mv.size(); ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = (*coords)(i, j);
    out.emplace_back(s.section_of(row), i);
  }
  return out;
}

IntMatrix columns(const IntMatrix& m, std::size_t first, std::size_t count) {
  IntMatrix out(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = m(i, first + j);
  return out;
}

ScaledLattice embed_block(const ScaledLattice& l, std::size_t block, std::size_t blocks) {
  const std::size_t n = l.ambient_dim();
  IntMatrix rows(l.rank(), n * blocks);
  rows.set_block(0, block * n, l.basis());
  return ScaledLattice(rows, l.denom_exp());
}

std::string bits(Word w, int n) {
  std::string s(n, '0');
  for (int i = 0; i < n; ++i)
    if ((w >> i) & 1) s[i] = '1';
  return s;
}

}  // namespace

Word DiscriminantSection::section_of(const std::vector<Integer>& upper_coords) const {
  Word w = 0;
  for (std::size_t j = 0; j < upper_coords.size(); ++j)
    if (mpz_odd_p(upper_coords[j].get_mpz_t())) w |= Word{1} << j;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if ((w >> pivots[i]) & 1) {
      Word row = 0;
      for (std::size_t j = 0; j < reduction.cols(); ++j)
        if (mpz_odd_p(reduction(i, j).get_mpz_t())) row |= Word{1} << j;
      w ^= row;
    }
  Word out = 0;
  for (std::size_t j = 0; j < free_columns.size(); ++j)
    if ((w >> free_columns[j]) & 1) out |= Word{1} << j;
  return out;
}

std::vector<std::int64_t> DiscriminantSection::representative(Word x) const {
  std::vector<std::int64_t> v(upper.ambient_dim(), 0);
  for (std::size_t j = 0; j < free_columns.size(); ++j)
    if ((x >> j) & 1)
      for (std::size_t c = 0; c < v.size(); ++c) v[c] += upper.basis()(free_columns[j], c).get_si();
  return v;
}

DiscriminantSection discriminant_section(const TwoSpecialLattice& m) {
  if (m.duality_level != 1) throw Error(ErrorKind::NotNormalized, "discriminant sections need duality level 1");
  if (m.rank() > 64) throw Error(ErrorKind::TooLarge, "discriminant sections are limited to rank 64");
  DiscriminantSection s;
  s.upper = special_twist(m.lattice, m.p, -1);
  auto c = s.upper.coordinates(m.lattice.basis(), m.lattice.denom_exp());
  if (!c) throw Error(ErrorKind::NotASublattice, "lattice is not inside its negative twist");
  const std::size_t n = c->cols();
  // mod 2 reduced echelon form of the lattice inside M[-1]
  std::vector<Word> rows;
  for (std::size_t i = 0; i < c->rows(); ++i) {
    Word w = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (mpz_odd_p((*c)(i, j).get_mpz_t())) w |= Word{1} << j;
    rows.push_back(w);
  }
  std::vector<Word> ech;
  for (Word w : rows) {
    for (std::size_t i = 0; i < ech.size(); ++i)
      if ((w >> s.pivots[i]) & 1) w ^= ech[i];
    if (!w) continue;
    const int piv = __builtin_ctzll(w);
    for (std::size_t i = 0; i < ech.size(); ++i)
      if ((ech[i] >> piv) & 1) ech[i] ^= w;
    ech.push_back(w);
    s.pivots.push_back(piv);
  }
  s.reduction = IntMatrix(ech.size(), n);
  for (std::size_t i = 0; i < ech.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) s.reduction(i, j) = static_cast<long>((ech[i] >> j) & 1);
  Word pivot_mask = 0;
  for (int p : s.pivots) pivot_mask |= Word{1} << p;
  for (std::size_t j = 0; j < n; ++j)
    if (!((pivot_mask >> j) & 1)) s.free_columns.push_back(static_cast<int>(j));

  const QMatrix& g = s.upper.gram();
  const std::size_t k = s.free_columns.size();
  Word diag = 0;
  std::vector<Word> polar(k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    const ExactRational& gaa = g(s.free_columns[a], s.free_columns[a]);
    if (gaa.get_den() != 1) throw Error(ErrorKind::NotIntegral, "norms on M[-1] are not integral");
    if (mpz_odd_p(gaa.get_num().get_mpz_t())) diag |= Word{1} << a;
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      ExactRational twice = g(s.free_columns[a], s.free_columns[b]) * 2;
      if (twice.get_den() != 1) throw Error(ErrorKind::NotIntegral, "inner products on M[-1] are not half-integral");
      if (mpz_odd_p(twice.get_num().get_mpz_t())) polar[a] |= Word{1} << b;
    }
  }
  s.space = QuadraticSpaceF2(static_cast<int>(k), diag, polar);
  return s;
}

std::vector<Word> minimal_cosets(const TwoSpecialLattice& m, const DiscriminantSection& s) {
  std::set<Word> seen;
  for (const auto& [w, i] : coset_table(m, s)) seen.insert(w);
  return {seen.begin(), seen.end()};
}

std::vector<Word> smv_section(const TwoSpecialLattice& m, const DiscriminantSection& s) {
  std::vector<Word> basis;
  for (Word w : minimal_cosets(m, s)) {
    basis.push_back(w);
    if (bit_rank(basis) < basis.size()) basis.pop_back();
  }
  return basis;
}

YpsilantiResult build_ypsilanti(const TwoSpecialLattice& m, const DiscriminantSection& s, const BitMatrix& zeta) {
  if (m.duality_level != 1) throw Error(ErrorKind::NotNormalized, "Ypsilanti gluing needs duality level 1");
  if (!is_isometry(s.space, zeta)) throw Error(ErrorKind::NotIsometry, "zeta is not an isometry of the discriminant form");
  const std::size_t n = m.lattice.ambient_dim();
  const int e = s.upper.denom_exp();
  const IntMatrix mb = m.lattice.basis_at(e);
  const int dim = s.space.dim();
  IntMatrix rows(2 * mb.rows() + dim, 2 * n);
  rows.set_block(0, 0, mb);
  rows.set_block(mb.rows(), n, mb);
  for (int j = 0; j < dim; ++j) {
    auto a = s.representative(Word{1} << j);
    auto b = s.representative(zeta[j]);
    for (std::size_t c = 0; c < n; ++c) {
      rows(2 * mb.rows() + j, c) = a[c];
      rows(2 * mb.rows() + j, n + c) = b[c];
    }
  }
  YpsilantiResult r;
  r.lattice = ScaledLattice::from_generators(rows, e);
  auto g = r.lattice.integral_gram();
  if (g) {
    r.even = true;
    for (std::size_t i = 0; i < g->rows(); ++i) r.even = r.even && mpz_even_p((*g)(i, i).get_mpz_t());
    r.determinant = smith_normal_form(*g).nonzero_product();
  }
  const IntMatrix& b = r.lattice.basis();
  bool inter = true, proj = true;
  for (std::size_t block = 0; block < 2; ++block) {
    IntMatrix other = columns(b, block == 0 ? n : 0, n);
    IntMatrix k = integer_left_kernel(other);
    ScaledLattice meet = k.rows() ? ScaledLattice::from_generators(k * b, r.lattice.denom_exp()) : ScaledLattice::zero(2 * n);
    inter = inter && meet.same_span(embed_block(m.lattice, block, 2));
    ScaledLattice projection = ScaledLattice::from_generators(columns(b, block * n, n), r.lattice.denom_exp());
    proj = proj && projection.same_span(s.upper);
  }
  r.intersections_ok = inter;
  r.projections_ok = proj;
  return r;
}

SeparationReport smv_separation_check(const YpsilantiResult& n, const TwoSpecialLattice& m,
                                      const DiscriminantSection& s, const BitMatrix& zeta) {
  SeparationReport rep;
  std::unordered_map<Word, std::size_t> witness;
  for (const auto& [w, i] : coset_table(m, s)) witness.emplace(w, i);
  const VectorSet& mv = *m.lower_minimal_vectors;
  for (const auto& [w, i] : witness) {
    auto hit = witness.find(apply(zeta, w));
    if (hit == witness.end()) continue;
    rep.separated = false;
    const std::size_t dim = mv.dim();
    std::vector<std::int64_t> cross(2 * dim);
    std::copy(mv[i].begin(), mv[i].end(), cross.begin());
    std::copy(mv[hit->second].begin(), mv[hit->second].end(), cross.begin() + dim);
    // the glue row maps coset w to its image, so (x1, x2) lies in the glued lattice
    if (!n.lattice.contains_vector(cross, mv.denom_exp()))
      throw Error(ErrorKind::NotASublattice, "cross vector is not in the glued lattice");
    rep.denom_exp = mv.denom_exp();
    std::int64_t nn = 0;
    for (auto x : cross) nn += x * x;
    rep.cross_norm = ExactRational(nn, 1);
    rep.cross_norm /= ExactRational(Integer(1) << (2 * mv.denom_exp()));
    rep.cross_vector = cross;
    break;
  }
  return rep;
}

YpsilantiCertificate ypsilanti_desk_analogue(std::uint64_t seed, bool force_nonavoiding) {
  const TwoSpecialLattice& m = desk_base();
  DiscriminantSection s = discriminant_section(m);
  std::vector<Word> w = smv_section(m, s);
  YpsilantiCertificate c;
  if (force_nonavoiding) {
    c.zeta.zeta = bit_identity(s.space.dim());
    c.zeta.seed = seed;
    c.zeta.avoiding = avoids(c.zeta.zeta, w, w);
  } else {
    c.zeta = sample_avoiding_map(s.space, w, w, seed);
  }
  c.result = build_ypsilanti(m, s, c.zeta.zeta);
  c.separation = smv_separation_check(c.result, m, s, c.zeta.zeta);
  return c;
}

void write_certificate(std::ostream& os, const YpsilantiCertificate& c) {
  write_lattice(os, c.result.lattice, false);
  os << "certificate\n";
  os << "determinant " << c.result.determinant << '\n';
  os << "even " << (c.result.even ? 1 : 0) << '\n';
  os << "separation " << (c.separation.separated ? 1 : 0) << '\n';
  os << "seed " << c.zeta.seed << '\n';
  os << "attempts " << c.zeta.attempts << '\n';
  os << "zeta " << c.zeta.zeta.size() << '\n';
  for (Word row : c.zeta.zeta) os << bits(row, static_cast<int>(c.zeta.zeta.size())) << '\n';
}

YpsilantiCertificate read_and_verify_certificate(std::istream& is) {
  ScaledLattice stored = read_lattice(is);
  std::string tag;
  if (!(is >> tag) || tag != "certificate") throw Error(ErrorKind::Parse, "expected 'certificate' block");
  auto field = [&](const char* name) {
    std::string key, value;
    if (!(is >> key >> value) || key != name) throw Error(ErrorKind::Parse, std::string("expected '") + name + "'");
    return value;
  };
  const std::string det = field("determinant");
  const std::string even = field("even");
  const std::string sep = field("separation");
  const std::uint64_t seed = std::stoull(field("seed"));
  const std::uint64_t attempts = std::stoull(field("attempts"));
  const int dim = std::stoi(field("zeta"));
  if (dim < 1 || dim > 64) throw Error(ErrorKind::Parse, "zeta dimension out of range");
  BitMatrix zeta(dim, 0);
  for (int i = 0; i < dim; ++i) {
    std::string row;
    if (!(is >> row) || static_cast<int>(row.size()) != dim || row.find_first_not_of("01") != std::string::npos)
      throw Error(ErrorKind::Parse, "malformed zeta row");
    for (int j = 0; j < dim; ++j)
      if (row[j] == '1') zeta[i] |= Word{1} << j;
  }

  const TwoSpecialLattice& m = desk_base();
  DiscriminantSection s = discriminant_section(m);
  if (s.space.dim() != dim) throw Error(ErrorKind::Parse, "zeta has the wrong dimension");
  YpsilantiCertificate c;
  try {
    c.result = build_ypsilanti(m, s, zeta);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, std::string("zeta rejected: ") + e.what());
  }
  if (!c.result.lattice.same_span(stored)) throw Error(ErrorKind::Parse, "lattice does not match the glue map");
  if (det != to_string(c.result.determinant)) throw Error(ErrorKind::Parse, "determinant line does not verify");
  if (even != (c.result.even ? "1" : "0")) throw Error(ErrorKind::Parse, "evenness line does not verify");
  c.separation = smv_separation_check(c.result, m, s, zeta);
  if (sep != (c.separation.separated ? "1" : "0")) throw Error(ErrorKind::Parse, "separation line does not verify");
  std::vector<Word> w = smv_section(m, s);
  c.zeta.zeta = zeta;
  c.zeta.seed = seed;
  c.zeta.attempts = attempts;
  c.zeta.avoiding = avoids(zeta, w, w);
  if (attempts > 0) {
    AvoidingMap again = sample_avoiding_map(s.space, w, w, seed, std::nullopt, attempts);
    if (again.zeta != zeta || again.attempts != attempts)
      throw Error(ErrorKind::Parse, "seed and attempt count do not reproduce zeta");
  }
  return c;
}

}  // namespace bwlat

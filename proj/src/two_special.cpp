#include <algorithm>
#include <limits>

#include "bwlat/washtenaw_ypsilanti.hpp"

namespace bwlat {

namespace {

int log2_of(const ExactRational& v) {
  const Integer& num = v.get_num();
  const Integer& den = v.get_den();
  if (den == 1 && num > 0 && mpz_popcount(num.get_mpz_t()) == 1)
    return static_cast<int>(mpz_sizeinbase(num.get_mpz_t(), 2)) - 1;
  if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1) return 1 - static_cast<int>(mpz_sizeinbase(den.get_mpz_t(), 2));
  return std::numeric_limits<int>::min();
}

// Pairing between the lattices is integral and det(a) det(b) = 1, so b = a*.
bool dual_pair(const ScaledLattice& a, const ScaledLattice& b) {
  if (a.rank() != b.rank()) return false;
  IntMatrix cross = a.basis() * b.basis().transpose();
  Integer den = 1;
  den <<= a.denom_exp() + b.denom_exp();
  for (const auto& x : cross.data())
    if (!mpz_divisible_p(x.get_mpz_t(), den.get_mpz_t())) return false;
  return lattice_determinant(a) * lattice_determinant(b) == 1;
}

IntMatrix repeat_block_diag(const IntMatrix& a, std::size_t copies) {
  IntMatrix m(a.rows() * copies, a.cols() * copies);
  for (std::size_t c = 0; c < copies; ++c) m.set_block(c * a.rows(), c * a.cols(), a);
  return m;
}

ScaledLattice repeat_lattice(const ScaledLattice& l, std::size_t copies) {
  return ScaledLattice(repeat_block_diag(l.basis(), copies), l.denom_exp());
}

std::optional<VectorSet> repeat_vectors(const std::optional<VectorSet>& vs, std::size_t copies) {
  constexpr std::size_t limit = std::size_t{1} << 24;
  if (!vs || vs->size() * copies * vs->dim() * copies > limit) return std::nullopt;
  VectorSet out(vs->dim() * copies, vs->denom_exp());
  std::vector<std::int64_t> buf(vs->dim() * copies, 0);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < vs->size(); ++i) {
      std::fill(buf.begin(), buf.end(), 0);
      std::copy(vs->data().begin() + i * vs->dim(), vs->data().begin() + (i + 1) * vs->dim(),
                buf.begin() + c * vs->dim());
      out.push_back(buf);
    }
  return out;
}

// Image of a vector set under x -> x p^k, exact in the dyadic representation.
std::optional<VectorSet> twist_vectors(const std::optional<VectorSet>& vs, const IntMatrix& p, int k) {
  if (!vs) return std::nullopt;
  if (k == 0) return vs;
  const std::size_t n = vs->dim();
  IntMatrix step = k > 0 ? p : p.transpose();
  VectorSet out(n, vs->denom_exp() + (k < 0 ? -k : 0));
  std::vector<std::int64_t> cur(n), next(n);
  for (std::size_t i = 0; i < vs->size(); ++i) {
    std::copy(vs->data().begin() + i * n, vs->data().begin() + (i + 1) * n, cur.begin());
    for (int s = 0; s < std::abs(k); ++s) {
      std::fill(next.begin(), next.end(), 0);
      for (std::size_t a = 0; a < n; ++a)
        if (cur[a] != 0)
          for (std::size_t b = 0; b < n; ++b)
            if (sgn(step(a, b)) != 0) next[b] += cur[a] * step(a, b).get_si();
      cur.swap(next);
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace

ScaledLattice special_twist(const ScaledLattice& l, const IntMatrix& p, int k) {
  if (k == 0) return l;
  const IntMatrix step = k > 0 ? p : p.transpose();
  IntMatrix rows = l.basis();
  for (int i = 0; i < std::abs(k); ++i) rows = rows * step;
  return ScaledLattice::from_generators(rows, l.denom_exp() + (k < 0 ? -k : 0));
}

std::optional<int> is_two_special(const ScaledLattice& l, const IntMatrix& p) {
  const std::size_t n = l.ambient_dim();
  if (p.rows() != n || p.cols() != n || l.rank() == 0) return std::nullopt;
  // <xp, yp> = 2 <x, y> on the span of L
  const IntMatrix bp = l.basis() * p;
  if (!(bp * bp.transpose() == (l.basis() * l.basis().transpose()).scaled(Integer(2)))) return std::nullopt;
  if (!special_twist(l, p, 2).same_span(scale_by_two_power(l, 1))) return std::nullopt;
  // det(L p^-r) = 2^(-r n) det(L), so det(L)^2 = 2^(r n)
  const int two_log = log2_of(lattice_determinant(l));
  if (two_log == std::numeric_limits<int>::min()) return std::nullopt;
  const int rank = static_cast<int>(l.rank());
  if ((2 * two_log) % rank != 0) return std::nullopt;
  const int r = 2 * two_log / rank;
  if (!dual_pair(l, special_twist(l, p, -r))) return std::nullopt;
  return r;
}

TwoSpecialLattice two_special_from_bw(int d) {
  BWPtr bw = build_bw(d);
  TwoSpecialLattice t;
  t.lattice = bw->lattice;
  t.p = IntMatrix::identity(bw->f.rows()) - bw->f;
  t.duality_level = bw->duality_level;
  t.min_norm = ExactRational(bw->min_norm());
  t.smv = bw->lattice;
  if (d >= 2 && d <= 5) {
    t.minimal_vectors = minimal_vectors_structural(*bw, 0);
    t.lower_minimal_vectors = minimal_vectors_structural(*bw, -1);
  }
  t.description = "BW_" + std::to_string(d);
  return t;
}

WashtenawData washtenaw_data(const TwoSpecialLattice& l) {
  ScaledLattice l1 = special_twist(l.lattice, l.p, 1);
  auto c1 = l.lattice.coordinates(l1.basis(), l1.denom_exp());
  auto cs = l.lattice.coordinates(l.smv.basis(), l.smv.denom_exp());
  if (!c1 || !cs) throw Error(ErrorKind::NotASublattice, "twist or minimal-vector span is not in the lattice");
  WashtenawData w;
  w.mvd = static_cast<int>(rank_mod2(c1->vstack(*cs)) - rank_mod2(*c1));
  w.washtenaw_ratio = ExactRational(2 * w.mvd, static_cast<long>(l.rank()));
  w.washtenaw_ratio.canonicalize();
  return w;
}

TwoSpecialLattice washtenawize(const TwoSpecialLattice& m, const BinaryCode& code) {
  const int r = m.duality_level;
  if (r != 0 && r != 1) throw Error(ErrorKind::NotNormalized, "base lattice must have duality level 0 or 1");
  const int len = code.length();
  if (len < 8 || (len & (len - 1)) != 0) throw Error(ErrorKind::CodeNotAdmissible, "code length must be 2^t with t >= 3");
  CodeProperties props = code_properties(code);
  if (!props.is_doubly_even || !props.is_self_orthogonal || !props.is_indecomposable)
    throw Error(ErrorKind::CodeNotAdmissible, "code must be doubly even, self-orthogonal and indecomposable");
  const std::size_t copies = static_cast<std::size_t>(len);
  if (m.rank() * copies > rank_cap(256))
    throw Error(ErrorKind::ResourceCap, "Washtenawization rank " + std::to_string(m.rank() * copies) + " exceeds the cap");

  const ScaledLattice lower = special_twist(m.lattice, m.p, 1 - r);
  const ScaledLattice upper = special_twist(m.lattice, m.p, -r);
  const int e = std::max(lower.denom_exp(), upper.denom_exp());
  const IntMatrix lo = lower.basis_at(e), up = upper.basis_at(e);
  const std::size_t n = m.lattice.ambient_dim();

  IntMatrix glue(static_cast<std::size_t>(code.dimension()) * up.rows(), n * copies);
  std::size_t row = 0;
  for (Word g : code.generators())
    for (std::size_t i = 0; i < up.rows(); ++i, ++row)
      for (std::size_t c = 0; c < copies; ++c)
        if ((g >> c) & 1)
          for (std::size_t j = 0; j < n; ++j) glue(row, c * n + j) = up(i, j);

  TwoSpecialLattice w;
  w.lattice = ScaledLattice::from_generators(repeat_block_diag(lo, copies).vstack(glue), e);
  w.p = repeat_block_diag(m.p, copies);
  w.duality_level = 1 - r;
  // A vector meeting a glue class has at least four components outside M[1-r], each of norm
  // at least mu(M[-r]); so the minimal vectors are those of the copies of M[1-r].
  w.min_norm = m.min_norm * (r == 0 ? 2 : 1);
  w.smv = repeat_lattice(special_twist(m.smv, m.p, 1 - r), copies);
  if (r == 0) {
    w.minimal_vectors = repeat_vectors(twist_vectors(m.minimal_vectors, m.p, 1), copies);
    w.lower_minimal_vectors = repeat_vectors(m.minimal_vectors, copies);
  } else {
    w.minimal_vectors = repeat_vectors(m.minimal_vectors, copies);
    w.lower_minimal_vectors = repeat_vectors(m.lower_minimal_vectors, copies);
  }
  w.michigan_conditions_assumed = m.michigan_conditions_assumed;
  w.conforming = m.conforming;
  w.description = "degree " + std::to_string(__builtin_ctz(static_cast<unsigned>(len))) + " Washtenawization of " +
                  m.description;
  return w;
}

TwoSpecialLattice washtenaw_series(int j, int k) {
  if (j < 1) throw Error(ErrorKind::InvalidParameter, "series index j must be positive");
  if (k < 5 + 3 * j) throw Error(ErrorKind::InvalidParameter, "the series starts at k = 5 + 3j");
  if (k >= 30 || (std::size_t{1} << k) > rank_cap(256))
    throw Error(ErrorKind::ResourceCap, "rank 2^" + std::to_string(k) + " exceeds the cap");
  const bool odd = k % 2 != 0;
  const int e = odd ? k - 3 * j - 1 : k - 3 * j;
  TwoSpecialLattice w = two_special_from_bw(e);
  const BinaryCode hamming8 = extended_hamming(3);
  for (int s = 0; s < (odd ? j - 1 : j); ++s) w = washtenawize(w, hamming8);
  if (odd) w = washtenawize(w, indecomposable_doubly_even(4));
  return w;
}

TwoSpecialLattice washtenaw_desk_analogue() {
  TwoSpecialLattice w = washtenawize(two_special_from_bw(3), extended_hamming(3));
  w.conforming = false;
  w.description += " (desk-scale analogue)";
  return w;
}

}  // namespace bwlat

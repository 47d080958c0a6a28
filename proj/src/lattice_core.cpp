#include "bwlat/lattice_core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>

namespace bwlat {

// ---------------------------------------------------------------- VectorSet

std::int64_t VectorSet::raw_norm(std::size_t i) const {
  std::int64_t s = 0;
  for (auto x : (*this)[i]) s += x * x;
  return s;
}

ExactRational VectorSet::norm(std::size_t i) const {
  Integer den = 1;
  den <<= 2 * denom_exp_;
  ExactRational r(Integer(static_cast<long>(raw_norm(i))), den);
  r.canonicalize();
  return r;
}

IntMatrix VectorSet::to_matrix() const {
  IntMatrix m(size(), dim_);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < dim_; ++j) m(i, j) = static_cast<long>((*this)[i][j]);
  return m;
}

VectorSet VectorSet::rescaled(int new_exp) const {
  if (new_exp < denom_exp_) throw Error(ErrorKind::InvalidParameter, "cannot lower a vector denominator");
  VectorSet out(dim_, new_exp);
  out.data_ = data_;
  const int s = new_exp - denom_exp_;
  for (auto& x : out.data_) x *= std::int64_t{1} << s;
  return out;
}

VectorSet VectorSet::sorted() const {
  std::vector<std::size_t> idx(size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    auto x = (*this)[a], y = (*this)[b];
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  VectorSet out(dim_, denom_exp_);
  out.reserve(size());
  for (auto i : idx) out.push_back((*this)[i]);
  return out;
}

bool VectorSet::same_set(const VectorSet& o) const {
  if (dim_ != o.dim_ || size() != o.size()) return false;
  const int e = std::max(denom_exp_, o.denom_exp_);
  return rescaled(e).sorted().data_ == o.rescaled(e).sorted().data_;
}

// ---------------------------------------------------------------- ScaledLattice

struct ScaledLattice::Cache {
  std::once_flag gram_once;
  QMatrix gram;
  std::optional<IntMatrix> igram;
  std::once_flag pinv_once;
  // pseudo-inverse as z / den: coordinates of v (at exponent e) = v * z / den
  IntMatrix pinv_num;
  Integer pinv_den;
};

namespace {

void reduce_denominator(IntMatrix& b, int& e) {
  while (e > 0) {
    for (const auto& x : b.data())
      if (mpz_odd_p(x.get_mpz_t())) return;
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) /= 2;
    --e;
  }
}

Integer pow2(int k) {
  Integer r = 1;
  r <<= k;
  return r;
}

int log2_exact(const Integer& v) {
  if (v <= 0 || mpz_popcount(v.get_mpz_t()) != 1) return -1;
  return static_cast<int>(mpz_sizeinbase(v.get_mpz_t(), 2)) - 1;
}

// Rational rows with power-of-two denominators as integer rows over 2^k.
std::pair<IntMatrix, int> dyadic_rows(const QMatrix& rows) {
  auto [d, z] = clear_denominators(rows);
  int k = log2_exact(d);
  if (k < 0) throw Error(ErrorKind::InvalidParameter, "result is not representable with a power-of-two denominator");
  return {z, k};
}

}  // namespace

ScaledLattice::ScaledLattice(IntMatrix basis, int denom_exp) : basis_(std::move(basis)), denom_exp_(denom_exp) {
  if (denom_exp_ < 0) {
    for (std::size_t i = 0; i < basis_.rows(); ++i)
      for (std::size_t j = 0; j < basis_.cols(); ++j) basis_(i, j) <<= -denom_exp_;
    denom_exp_ = 0;
  }
  reduce_denominator(basis_, denom_exp_);
  cache_ = std::make_shared<Cache>();
}

ScaledLattice ScaledLattice::from_generators(const IntMatrix& rows, int denom_exp) {
  IntMatrix b = rows;
  int e = denom_exp;
  if (e < 0) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) <<= -e;
    e = 0;
  }
  reduce_denominator(b, e);
  return ScaledLattice(hnf_span(b), e);
}

ScaledLattice::Cache& ScaledLattice::cache() const {
  if (!cache_) cache_ = std::make_shared<Cache>();
  return *cache_;
}

const QMatrix& ScaledLattice::gram() const {
  Cache& c = cache();
  std::call_once(c.gram_once, [&] {
    IntMatrix raw = basis_ * basis_.transpose();
    Integer den = pow2(2 * denom_exp_);
    c.gram = QMatrix(raw.rows(), raw.cols());
    bool integral = true;
    IntMatrix ig(raw.rows(), raw.cols());
    for (std::size_t i = 0; i < raw.rows(); ++i)
      for (std::size_t j = 0; j < raw.cols(); ++j) {
        c.gram(i, j) = ExactRational(raw(i, j), den);
        c.gram(i, j).canonicalize();
        if (integral && mpz_divisible_p(raw(i, j).get_mpz_t(), den.get_mpz_t())) {
          ig(i, j) = raw(i, j) / den;
        } else {
          integral = false;
        }
      }
    if (integral) c.igram = std::move(ig);
  });
  return c.gram;
}

std::optional<IntMatrix> ScaledLattice::integral_gram() const {
  gram();
  return cache().igram;
}

bool ScaledLattice::is_integral() const { return integral_gram().has_value(); }

bool ScaledLattice::is_even() const {
  auto g = integral_gram();
  if (!g) return false;
  for (std::size_t i = 0; i < g->rows(); ++i)
    if (mpz_odd_p((*g)(i, i).get_mpz_t())) return false;
  return true;
}

ScaledLattice ScaledLattice::canonical() const { return from_generators(basis_, denom_exp_); }

IntMatrix ScaledLattice::basis_at(int e) const {
  if (e < denom_exp_) throw Error(ErrorKind::InvalidParameter, "basis_at: exponent below lattice denominator");
  IntMatrix b = basis_;
  if (e == denom_exp_) return b;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) <<= (e - denom_exp_);
  return b;
}

std::optional<IntMatrix> ScaledLattice::coordinates(const IntMatrix& rows, int rows_exp) const {
  if (rows.cols() != ambient_dim()) throw Error(ErrorKind::InvalidParameter, "ambient dimension mismatch");
  if (rows.rows() == 0) return IntMatrix(0, rank());
  if (rank() == 0) {
    for (const auto& x : rows.data())
      if (sgn(x) != 0) return std::nullopt;
    return IntMatrix(rows.rows(), 0);
  }
  Cache& c = cache();
  std::call_once(c.pinv_once, [&] {
    QMatrix pinv = rank() == ambient_dim()
                       ? rational_inverse(basis_)
                       : to_rational(basis_.transpose()) * rational_inverse(basis_ * basis_.transpose());
    auto [d, z] = clear_denominators(pinv);
    c.pinv_den = d;
    c.pinv_num = std::move(z);
  });
  // coordinates of v/2^rows_exp: v * 2^(e - rows_exp) * z / den
  IntMatrix prod = rows * c.pinv_num;
  const int shift = denom_exp_ - rows_exp;
  Integer den = c.pinv_den;
  if (shift < 0) den <<= -shift;
  std::optional<IntMatrix> ic = IntMatrix(prod.rows(), prod.cols());
  for (std::size_t i = 0; i < prod.rows() && ic; ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j) {
      Integer x = prod(i, j);
      if (shift > 0) x <<= shift;
      if (!mpz_divisible_p(x.get_mpz_t(), den.get_mpz_t())) {
        ic.reset();
        break;
      }
      mpz_divexact((*ic)(i, j).get_mpz_t(), x.get_mpz_t(), den.get_mpz_t());
    }
  if (!ic) return std::nullopt;
  if (rank() != ambient_dim()) {
    // verify the vector actually lies in the span
    IntMatrix back = *ic * basis_;
    const int e = std::max(denom_exp_, rows_exp);
    for (std::size_t i = 0; i < rows.rows(); ++i)
      for (std::size_t j = 0; j < rows.cols(); ++j) {
        Integer a = back(i, j), b = rows(i, j);
        a <<= (e - denom_exp_);
        b <<= (e - rows_exp);
        if (a != b) return std::nullopt;
      }
  }
  return ic;
}

std::optional<std::vector<Integer>> ScaledLattice::coordinates(const std::vector<Integer>& v, int v_exp) const {
  IntMatrix r(1, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) r(0, j) = v[j];
  auto c = coordinates(r, v_exp);
  if (!c) return std::nullopt;
  return std::vector<Integer>(c->data().begin(), c->data().end());
}

bool ScaledLattice::contains(const ScaledLattice& sub) const {
  if (sub.ambient_dim() != ambient_dim()) return false;
  return coordinates(sub.basis_, sub.denom_exp_).has_value();
}

bool ScaledLattice::contains_vector(std::span<const std::int64_t> v, int v_exp) const {
  std::vector<Integer> w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = static_cast<long>(v[i]);
  return coordinates(w, v_exp).has_value();
}

bool ScaledLattice::same_span(const ScaledLattice& o) const {
  if (rank() != o.rank() || ambient_dim() != o.ambient_dim()) return false;
  ScaledLattice a = canonical(), b = o.canonical();
  return a.denom_exp_ == b.denom_exp_ && a.basis_ == b.basis_;
}

// ---------------------------------------------------------------- MembershipTester

MembershipTester::MembershipTester(const ScaledLattice& l) : n_(l.rank()), lattice_exp_(l.denom_exp()), lattice_(l) {
  if (l.rank() != l.ambient_dim() || l.rank() == 0) return;
  pinv_ = rational_inverse(l.basis());
  auto [d, z] = clear_denominators(pinv_);
  d_ = d;
  Integer odd = d;
  d_two_ = 0;
  while (mpz_even_p(odd.get_mpz_t())) {
    odd /= 2;
    ++d_two_;
  }
  if (!odd.fits_slong_p()) return;
  d_odd_ = odd.get_si();
  z_.resize(z.rows() * z.cols());
  for (std::size_t i = 0; i < z.rows(); ++i)
    for (std::size_t j = 0; j < z.cols(); ++j) {
      if (abs(z(i, j)) > Integer(1) << 40) return;
      z_[i * n_ + j] = z(i, j).get_si();
    }
  fast_ = d_two_ < 100;
}

bool MembershipTester::contains(std::span<const std::int64_t> v, int v_exp) const {
  if (!fast_) return lattice_.contains_vector(v, v_exp);
  // coordinates = v * z * 2^(lattice_exp - v_exp) / d
  const int shift = lattice_exp_ - v_exp;
  const int need_two = shift >= 0 ? std::max(0, d_two_ - shift) : d_two_ - shift;
  if (need_two >= 120) return lattice_.contains_vector(v, v_exp);
  thread_local std::vector<__int128> acc;
  acc.assign(n_, 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::int64_t vk = v[k];
    if (vk == 0) continue;
    const std::int64_t* zr = &z_[k * n_];
    for (std::size_t j = 0; j < n_; ++j) acc[j] += static_cast<__int128>(vk) * zr[j];
  }
  const __int128 mask = (static_cast<__int128>(1) << need_two) - 1;
  for (std::size_t j = 0; j < n_; ++j) {
    if (acc[j] & mask) return false;
    if (d_odd_ != 1 && acc[j] % d_odd_ != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------- basic operations

ExactRational lattice_determinant(const ScaledLattice& l) {
  Integer det;
  if (l.rank() == l.ambient_dim()) {
    Integer b = determinant(l.basis());
    det = b * b;
  } else {
    det = determinant(l.basis() * l.basis().transpose());
  }
  ExactRational r(det, pow2(2 * l.denom_exp() * static_cast<int>(l.rank())));
  r.canonicalize();
  return r;
}

Integer lattice_index(const ScaledLattice& sub, const ScaledLattice& super) {
  if (sub.rank() != super.rank()) throw Error(ErrorKind::InvalidParameter, "index needs equal ranks");
  auto c = super.coordinates(sub.basis(), sub.denom_exp());
  if (!c) throw Error(ErrorKind::NotASublattice, "not a sublattice");
  return abs(determinant(*c));
}

ScaledLattice lattice_sum(const ScaledLattice& a, const ScaledLattice& b) { return lattice_sum(std::vector{a, b}); }

ScaledLattice lattice_sum(const std::vector<ScaledLattice>& parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidParameter, "empty lattice sum");
  int e = 0;
  for (const auto& p : parts) e = std::max(e, p.denom_exp());
  IntMatrix rows(0, parts[0].ambient_dim());
  for (const auto& p : parts) rows = rows.vstack(p.basis_at(e));
  return ScaledLattice::from_generators(rows, e);
}

ScaledLattice lattice_intersection(const ScaledLattice& a, const ScaledLattice& b) {
  const int e = std::max(a.denom_exp(), b.denom_exp());
  IntMatrix A = a.basis_at(e), B = b.basis_at(e);
  IntMatrix k = integer_left_kernel(A.vstack(B));
  IntMatrix x = k.block(0, 0, k.rows(), A.rows());
  return ScaledLattice::from_generators(x * A, e);
}

ScaledLattice orthogonal_sum(const ScaledLattice& a, const ScaledLattice& b) {
  const int e = std::max(a.denom_exp(), b.denom_exp());
  IntMatrix m(a.rank() + b.rank(), a.ambient_dim() + b.ambient_dim());
  m.set_block(0, 0, a.basis_at(e));
  m.set_block(a.rank(), a.ambient_dim(), b.basis_at(e));
  return ScaledLattice(m, e);
}

ScaledLattice scale_by_two_power(const ScaledLattice& l, int k) {
  if (k >= 0) {
    IntMatrix b = l.basis();
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) <<= k;
    return ScaledLattice(b, l.denom_exp());
  }
  return ScaledLattice(l.basis(), l.denom_exp() - k);
}

ScaledLattice apply_matrix(const ScaledLattice& l, const IntMatrix& t) {
  return ScaledLattice::from_generators(l.basis() * t, l.denom_exp());
}

ScaledLattice apply_matrix(const ScaledLattice& l, const QMatrix& t) {
  auto [z, k] = dyadic_rows(t);
  return ScaledLattice::from_generators(l.basis() * z, l.denom_exp() + k);
}

IntMatrix basis_action(const ScaledLattice& l, const QMatrix& t) {
  if (t.rows() != l.ambient_dim() || t.cols() != l.ambient_dim())
    throw Error(ErrorKind::InvalidParameter, "transformation has the wrong size");
  auto [z, k] = dyadic_rows(t);
  auto c = l.coordinates(l.basis() * z, l.denom_exp() + k);
  if (!c) throw Error(ErrorKind::NotAnIsometry, "transformation does not preserve the lattice");
  if (abs(determinant(*c)) != 1) throw Error(ErrorKind::NotAnIsometry, "transformation is not onto the lattice");
  const QMatrix& g = l.gram();
  QMatrix tc = to_rational(*c);
  if (!(tc * g * tc.transpose() == g)) throw Error(ErrorKind::NotAnIsometry, "transformation is not an isometry");
  return *c;
}

ScaledLattice orthogonal_complement(const ScaledLattice& m, const ScaledLattice& l) {
  const int e = std::max(m.denom_exp(), l.denom_exp());
  IntMatrix k = integer_left_kernel(l.basis_at(e) * m.basis_at(e).transpose());
  if (k.rows() == 0) return ScaledLattice::zero(l.ambient_dim());
  return ScaledLattice::from_generators(k * l.basis(), l.denom_exp());
}

ScaledLattice dual_lattice(const ScaledLattice& l) {
  const QMatrix& g = l.gram();
  QMatrix gi;
  try {
    gi = rational_inverse(g);
  } catch (const Error&) {
    throw Error(ErrorKind::SingularGram, "Gram matrix is singular");
  }
  // dual basis rows = G^-1 * (B / 2^e)
  QMatrix rows = gi * to_rational(l.basis());
  auto [z, k] = dyadic_rows(rows);
  return ScaledLattice::from_generators(z, k + l.denom_exp());
}

SnfResult discriminant_invariants(const ScaledLattice& l) {
  auto g = l.integral_gram();
  if (!g) throw Error(ErrorKind::NotIntegral, "discriminant group needs an integral lattice");
  SnfResult s = smith_normal_form(*g);
  SnfResult out;
  for (const auto& f : s.invariant_factors) {
    if (f == 0) throw Error(ErrorKind::SingularGram, "Gram matrix is singular");
    if (f != 1) out.invariant_factors.push_back(f);
  }
  return out;
}

// ---------------------------------------------------------------- LLL and enumeration

namespace {

struct Gso {
  std::vector<std::vector<ExactRational>> mu;
  std::vector<ExactRational> b;
};

Gso gram_schmidt(const QMatrix& g) {
  const std::size_t n = g.rows();
  Gso s;
  s.mu.assign(n, std::vector<ExactRational>(n));
  s.b.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      ExactRational v = g(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= s.mu[j][k] * s.mu[i][k] * s.b[k];
      s.mu[i][j] = v / s.b[j];
    }
    ExactRational v = g(i, i);
    for (std::size_t k = 0; k < i; ++k) v -= s.mu[i][k] * s.mu[i][k] * s.b[k];
    s.b[i] = v;
    if (sgn(v) <= 0) throw Error(ErrorKind::SingularGram, "Gram matrix is not positive definite");
  }
  return s;
}

Integer round_rational(const ExactRational& q) {
  ExactRational h = q + ExactRational(1, 2);
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
  return r;
}

}  // namespace

IntMatrix lll_reduce_gram(const QMatrix& gram) {
  const std::size_t n = gram.rows();
  QMatrix g = gram;
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  Gso s = gram_schmidt(g);
  const ExactRational delta(3, 4);
  auto reduce = [&](std::size_t k, std::size_t l) {
    Integer q = round_rational(s.mu[k][l]);
    if (q == 0) return;
    for (std::size_t j = 0; j < n; ++j) u(k, j) -= q * u(l, j);
    ExactRational qq(q);
    for (std::size_t j = 0; j < n; ++j) g(k, j) -= qq * g(l, j);
    for (std::size_t j = 0; j < n; ++j) g(j, k) -= qq * g(j, l);
    for (std::size_t j = 0; j < l; ++j) s.mu[k][j] -= qq * s.mu[l][j];
    s.mu[k][l] -= qq;
  };
  std::size_t k = 1;
  while (k < n) {
    reduce(k, k - 1);
    if (s.b[k] < (delta - s.mu[k][k - 1] * s.mu[k][k - 1]) * s.b[k - 1]) {
      u.swap_rows(k, k - 1);
      g.swap_rows(k, k - 1);
      for (std::size_t j = 0; j < n; ++j) std::swap(g(j, k), g(j, k - 1));
      s = gram_schmidt(g);
      k = std::max<std::size_t>(1, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  return u;
}

namespace {

struct Enumerator {
  const Gso& s;
  std::size_t n;
  std::vector<long> x;
  std::vector<ExactRational> center;
  std::vector<ExactRational> remaining;
  std::function<void(const std::vector<long>&)> emit;

  void run(const ExactRational& bound) {
    x.assign(n, 0);
    center.assign(n, 0);
    remaining.assign(n + 1, 0);
    remaining[n] = bound;
    level(n - 1);
  }

  void level(std::size_t i) {
    ExactRational& c = center[i];
    c = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (x[j] != 0) c -= s.mu[j][i] * x[j];
    const ExactRational& r = remaining[i + 1];
    const double cd = c.get_d();
    const double rad = std::sqrt(std::max(0.0, ExactRational(r / s.b[i]).get_d()));
    const long lo = static_cast<long>(std::floor(cd - rad)) - 1;
    const long hi = static_cast<long>(std::ceil(cd + rad)) + 1;
    ExactRational t, val;
    for (long xi = lo; xi <= hi; ++xi) {
      t = xi;
      t -= c;
      val = s.b[i] * t * t;
      if (val > r) continue;
      x[i] = xi;
      if (i == 0) {
        emit(x);
      } else {
        remaining[i] = r - val;
        level(i - 1);
      }
    }
    x[i] = 0;
  }
};

}  // namespace

VectorSet certified_short_vectors(const ScaledLattice& l, const ExactRational& norm_bound) {
  const std::size_t n = l.rank();
  if (n > rank_cap(24)) throw Error(ErrorKind::TooLarge, "exhaustive enumeration is capped at rank 24");
  VectorSet out(l.ambient_dim(), l.denom_exp());
  if (n == 0 || sgn(norm_bound) <= 0) return out;
  IntMatrix u = lll_reduce_gram(l.gram());
  QMatrix uq = to_rational(u);
  QMatrix g = uq * l.gram() * uq.transpose();
  Gso s = gram_schmidt(g);
  IntMatrix ub = u * l.basis();
  std::vector<std::int64_t> ub64(ub.rows() * ub.cols());
  for (std::size_t i = 0; i < ub.rows(); ++i)
    for (std::size_t j = 0; j < ub.cols(); ++j) {
      if (!ub(i, j).fits_slong_p()) throw Error(ErrorKind::TooLarge, "basis entries exceed 64 bits");
      ub64[i * ub.cols() + j] = ub(i, j).get_si();
    }
  std::vector<std::int64_t> v(l.ambient_dim());
  Enumerator en{s, n, {}, {}, {}, {}};
  en.emit = [&](const std::vector<long>& x) {
    bool zero = true;
    std::fill(v.begin(), v.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      zero = false;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += x[i] * ub64[i * v.size() + j];
    }
    if (!zero) out.push_back(v);
  };
  en.run(norm_bound);
  return out;
}

ExactRational minimum_norm(const ScaledLattice& l) {
  if (l.rank() == 0) throw Error(ErrorKind::InvalidParameter, "zero lattice has no minimum");
  IntMatrix u = lll_reduce_gram(l.gram());
  QMatrix uq = to_rational(u);
  QMatrix g = uq * l.gram() * uq.transpose();
  ExactRational bound = g(0, 0);
  for (std::size_t i = 1; i < g.rows(); ++i) bound = std::min(bound, g(i, i));
  VectorSet vs = certified_short_vectors(l, bound);
  ExactRational best = bound;
  for (std::size_t i = 0; i < vs.size(); ++i) best = std::min(best, vs.norm(i));
  return best;
}

// ---------------------------------------------------------------- code lattices

ScaledLattice orthogonal_frame(int m, int n) {
  if (m < 0) throw Error(ErrorKind::InvalidParameter, "basis norm exponent must be nonnegative");
  if (m % 2 == 0) {
    IntMatrix b(n, n);
    for (int i = 0; i < n; ++i) b(i, i) = pow2(m / 2);
    return ScaledLattice(b, 0);
  }
  // odd m: pair coordinates, e_{2k} +- e_{2k+1}
  const int ambient = n + (n % 2);
  IntMatrix b(n, ambient);
  const Integer s = pow2((m - 1) / 2);
  for (int i = 0; i < n; ++i) {
    const int k = i / 2;
    b(i, 2 * k) = s;
    b(i, 2 * k + 1) = (i % 2 == 0) ? Integer(s) : Integer(-s);
  }
  return ScaledLattice(b, 0);
}

ScaledLattice lattice_from_code(int m, const BinaryCode& code) {
  const int n = code.length();
  ScaledLattice frame = orthogonal_frame(m, n);
  IntMatrix rows = frame.basis_at(1);
  IntMatrix glue(code.dimension(), frame.ambient_dim());
  for (int r = 0; r < code.dimension(); ++r) {
    Word w = code.generators()[r];
    for (int i = 0; i < n; ++i)
      if ((w >> i) & 1)
        for (std::size_t j = 0; j < frame.ambient_dim(); ++j) glue(r, j) += frame.basis()(i, j);
  }
  return ScaledLattice::from_generators(rows.vstack(glue), 1);
}

// ---------------------------------------------------------------- Kneser decomposition

namespace {

std::int64_t raw_dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

DecompositionResult components(const ScaledLattice& l, const VectorSet& gens) {
  const std::size_t m = gens.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      if (find(i) == find(j)) continue;
      if (raw_dot(gens[i], gens[j]) != 0) parent[find(j)] = find(i);
    }
  DecompositionResult res;
  std::vector<long> cls(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = find(i);
    if (cls[r] < 0) {
      cls[r] = static_cast<long>(res.summand_index_classes.size());
      res.summand_index_classes.emplace_back();
    }
    res.summand_index_classes[cls[r]].push_back(i);
  }
  for (const auto& c : res.summand_index_classes) {
    IntMatrix rows(c.size(), gens.dim());
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t j = 0; j < gens.dim(); ++j) rows(k, j) = static_cast<long>(gens[c[k]][j]);
    res.summand_lattices.push_back(ScaledLattice::from_generators(rows, gens.denom_exp()));
  }
  (void)l;
  res.generating_vectors = gens;
  return res;
}

}  // namespace

DecompositionResult kneser_decompose(const ScaledLattice& l, const VectorSet& generating) {
  return components(l, generating);
}

DecompositionResult kneser_decompose(const ScaledLattice& l) {
  if (l.rank() > rank_cap(24)) throw Error(ErrorKind::TooLarge, "decomposition needs exhaustive enumeration (rank <= 24)");
  if (l.rank() == 0) return {};
  const ExactRational mu = minimum_norm(l);
  const ExactRational step = l.is_even() ? ExactRational(2) : (l.is_integral() ? ExactRational(1) : mu);
  ExactRational bound = mu;
  for (int round = 0; round < 16; ++round, bound += step) {
    VectorSet all = certified_short_vectors(l, bound);
    std::vector<std::size_t> order(all.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::int64_t> norms(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) norms[i] = all.raw_norm(i);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return norms[a] < norms[b]; });
    VectorSet indec(all.dim(), all.denom_exp());
    std::vector<std::size_t> kept;
    for (std::size_t i : order) {
      bool decomposable = false;
      for (std::size_t j : kept) {
        if (norms[j] >= norms[i]) break;
        if (raw_dot(all[i], all[j]) == norms[j]) {
          decomposable = true;
          break;
        }
      }
      if (!decomposable) {
        kept.push_back(i);
        indec.push_back(all[i]);
      }
    }
    ScaledLattice span = ScaledLattice::from_generators(indec.to_matrix(), indec.denom_exp());
    if (span.same_span(l)) return components(l, indec);
  }
  throw Error(ErrorKind::TooLarge, "no generating set of indecomposable vectors found below the bound");
}

// ---------------------------------------------------------------- involutions

ScaledLattice eigenlattice(const ScaledLattice& l, const Involution& t, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::InvalidParameter, "sign must be +1 or -1");
  IntMatrix tl = basis_action(l, t.matrix);
  if (!(tl * tl == IntMatrix::identity(l.rank()))) throw Error(ErrorKind::NotAnIsometry, "matrix is not an involution");
  IntMatrix a = tl - IntMatrix::identity(l.rank()).scaled(sign);
  IntMatrix k = integer_left_kernel(a);
  if (k.rows() == 0) return ScaledLattice::zero(l.ambient_dim());
  return ScaledLattice::from_generators(k * l.basis(), l.denom_exp());
}

int defect(const ScaledLattice& l, const Involution& t) {
  ScaledLattice s = lattice_sum(eigenlattice(l, t, 1), eigenlattice(l, t, -1));
  Integer idx = lattice_index(s, l);
  int k = log2_exact(idx);
  if (k < 0) throw Error(ErrorKind::InvalidParameter, "eigenlattice index is not a power of two");
  return k;
}

int defect_by_jordan_blocks(const ScaledLattice& l, const Involution& t) {
  IntMatrix tl = basis_action(l, t.matrix);
  return static_cast<int>(rank_mod2(tl - IntMatrix::identity(l.rank())));
}

bool is_ssd(const ScaledLattice& m, const ScaledLattice& l) {
  if (!l.contains(m)) throw Error(ErrorKind::NotASublattice, "m is not a sublattice of l");
  if (m.rank() == 0) return true;
  if (!m.is_integral()) return false;
  QMatrix gi = rational_inverse(m.gram());
  return to_integer(gi.scaled(2)).has_value();
}

bool is_rssd(const ScaledLattice& m, const ScaledLattice& l) {
  if (!l.contains(m)) throw Error(ErrorKind::NotASublattice, "m is not a sublattice of l");
  ScaledLattice perp = orthogonal_complement(m, l);
  ScaledLattice s = m.rank() == 0 ? perp : (perp.rank() == 0 ? m : lattice_sum(m, perp));
  return s.contains(scale_by_two_power(l, 1));
}

Involution ssd_involution(const ScaledLattice& m, const ScaledLattice& l) {
  if (!l.contains(m)) throw Error(ErrorKind::NotASublattice, "m is not a sublattice of l");
  const std::size_t N = l.ambient_dim();
  QMatrix t = QMatrix::identity(N);
  if (m.rank() == 0) return {t};
  QMatrix b = to_rational(m.basis());
  QMatrix p = b.transpose() * rational_inverse(b * b.transpose()) * b;
  return {t - p.scaled(2)};
}

}  // namespace bwlat

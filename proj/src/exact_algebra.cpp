#include "bwlat/exact_algebra.hpp"

#include <algorithm>

namespace bwlat {

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// row_i -= q * row_r over columns [c0, cols)
void row_submul(IntMatrix& a, std::size_t i, std::size_t r, const Integer& q, std::size_t c0) {
  for (std::size_t j = c0; j < a.cols(); ++j) {
    if (sgn(a(r, j)) != 0) mpz_submul(a(i, j).get_mpz_t(), q.get_mpz_t(), a(r, j).get_mpz_t());
  }
}

void col_submul(IntMatrix& a, std::size_t j, std::size_t c, const Integer& q, std::size_t r0) {
  for (std::size_t i = r0; i < a.rows(); ++i) {
    if (sgn(a(i, c)) != 0) mpz_submul(a(i, j).get_mpz_t(), q.get_mpz_t(), a(i, c).get_mpz_t());
  }
}

void swap_cols(IntMatrix& a, std::size_t x, std::size_t y) {
  if (x == y) return;
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, x), a(i, y));
}

bool row_is_zero(const IntMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (sgn(a(i, j)) != 0) return false;
  return true;
}

}  // namespace

std::vector<Integer> SnfResult::nontrivial() const {
  std::vector<Integer> out;
  for (const auto& f : invariant_factors)
    if (f != 1) out.push_back(f);
  return out;
}

Integer SnfResult::nonzero_product() const {
  Integer p = 1;
  for (const auto& f : invariant_factors)
    if (f != 0) p *= f;
  return p;
}

IntMatrix hnf_span(const IntMatrix& rows) {
  IntMatrix a = rows;
  std::size_t m = a.rows();
  const std::size_t n = a.cols();
  // drop zero rows up front
  for (std::size_t i = 0; i < m;) {
    if (row_is_zero(a, i)) {
      a.swap_rows(i, m - 1);
      --m;
    } else {
      ++i;
    }
  }
  std::size_t r = 0;
  Integer q;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool have_pivot = false;
    while (true) {
      std::size_t piv = m;
      for (std::size_t i = r; i < m; ++i) {
        if (sgn(a(i, c)) == 0) continue;
        if (piv == m || cmpabs(a(i, c), a(piv, c)) < 0) piv = i;
      }
      if (piv == m) break;
      have_pivot = true;
      a.swap_rows(r, piv);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (sgn(a(i, c)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
        row_submul(a, i, r, q, c);
        if (sgn(a(i, c)) != 0) clean = false;
      }
      // retire rows that became zero
      for (std::size_t i = r + 1; i < m;) {
        if (sgn(a(i, c)) == 0 && row_is_zero(a, i)) {
          a.swap_rows(i, m - 1);
          --m;
        } else {
          ++i;
        }
      }
      if (clean) break;
    }
    if (!have_pivot) continue;
    if (sgn(a(r, c)) < 0)
      for (std::size_t j = c; j < n; ++j) a(r, j) = -a(r, j);
    for (std::size_t i = 0; i < r; ++i) {
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
      if (sgn(q) != 0) row_submul(a, i, r, q, c);
    }
    ++r;
  }
  return a.block(0, 0, r, n);
}

SnfResult smith_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t R = a.rows(), C = a.cols();
  const std::size_t k = std::min(R, C);
  SnfResult res;
  Integer q;
  std::size_t t = 0;
  for (; t < k; ++t) {
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        if (sgn(a(i, j)) == 0) continue;
        if (pi == R || cmpabs(a(i, j), a(pi, pj)) < 0) {
          pi = i;
          pj = j;
        }
      }
    if (pi == R) break;
    a.swap_rows(t, pi);
    swap_cols(a, t, pj);
    while (true) {
      bool done = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (sgn(a(i, t)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
        row_submul(a, i, t, q, t);
        if (sgn(a(i, t)) != 0) done = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (sgn(a(t, j)) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
        col_submul(a, j, t, q, t);
        if (sgn(a(t, j)) != 0) done = false;
      }
      if (!done) {
        // move the smallest remainder in row t / column t onto the diagonal
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < R; ++i)
          if (sgn(a(i, t)) != 0 && cmpabs(a(i, t), a(bi, bj)) < 0) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < C; ++j)
          if (sgn(a(t, j)) != 0 && cmpabs(a(t, j), a(bi, bj)) < 0) {
            bi = t;
            bj = j;
          }
        a.swap_rows(t, bi);
        swap_cols(a, t, bj);
        continue;
      }
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == R) break;
      for (std::size_t j = t; j < C; ++j) a(t, j) += a(bad, j);
    }
    res.invariant_factors.push_back(abs(a(t, t)));
  }
  for (; t < k; ++t) res.invariant_factors.push_back(0);
  return res;
}

std::size_t rank_mod2(const IntMatrix& m) {
  const std::size_t words = (m.cols() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (mpz_odd_p(m(i, j).get_mpz_t())) rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows.size() && !(rows[piv][w] & bit)) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i)
      if (rows[i][w] & bit)
        for (std::size_t k = w; k < words; ++k) rows[i][k] ^= rows[rank][k];
    ++rank;
  }
  return rank;
}

Integer determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::InvalidParameter, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a(k, k)) == 0) {
      std::size_t p = k + 1;
      while (p < n && sgn(a(p, k)) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(k, k) * a(i, j) - a(i, k) * a(k, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rational_rank(const IntMatrix& m) { return hnf_span(m).rows(); }

QMatrix rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::SingularMatrix, "non-square matrix has no inverse");
  const std::size_t n = m.rows();
  IntMatrix a = m.hstack(IntMatrix::identity(n));
  const std::size_t w = 2 * n;
  Integer prev = 1, v;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    a.swap_rows(k, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < w; ++j) {
        if (j == k) continue;
        v = a(k, k) * a(i, j);
        mpz_submul(v.get_mpz_t(), a(i, k).get_mpz_t(), a(k, j).get_mpz_t());
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  // fraction-free Gauss-Jordan leaves +-det on the diagonal
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      inv(i, j) = ExactRational(a(i, n + j), a(i, i));
      inv(i, j).canonicalize();
    }
  return inv;
}

QMatrix rational_inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::SingularMatrix, "non-square matrix has no inverse");
  const std::size_t n = m.rows();
  QMatrix a = m.hstack(QMatrix::identity(n));
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && sgn(a(p, k)) == 0) ++p;
    if (p == n) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
    a.swap_rows(k, p);
    ExactRational piv = a(k, k);
    for (std::size_t j = 0; j < 2 * n; ++j) a(k, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(a(i, k)) == 0) continue;
      ExactRational f = a(i, k);
      for (std::size_t j = 0; j < 2 * n; ++j)
        if (sgn(a(k, j)) != 0) a(i, j) -= f * a(k, j);
    }
  }
  return a.block(0, n, n, n);
}

IntMatrix integer_left_kernel(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix aug = m.hstack(IntMatrix::identity(r));
  IntMatrix h = hnf_span(aug);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < c && zero; ++j) zero = sgn(h(i, j)) == 0;
    if (zero) keep.push_back(i);
  }
  IntMatrix k(keep.size(), r);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < r; ++j) k(i, j) = h(keep[i], c + j);
  return hnf_span(k);
}

QMatrix to_rational(const IntMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j);
  return q;
}

std::optional<IntMatrix> to_integer(const QMatrix& m) {
  IntMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) return std::nullopt;
      z(i, j) = m(i, j).get_num();
    }
  return z;
}

std::pair<Integer, IntMatrix> clear_denominators(const QMatrix& m) {
  Integer d = 1;
  for (const auto& x : m.data()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix z(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Integer t = d / m(i, j).get_den();
      z(i, j) = m(i, j).get_num() * t;
    }
  return {d, z};
}

std::optional<QMatrix> solve_left(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidParameter, "solve_left width mismatch");
  IntMatrix at = a.transpose();
  QMatrix g_inv = rational_inverse(a * at);
  QMatrix x = to_rational(b * at) * g_inv;
  if (x * to_rational(a) == to_rational(b)) return x;
  return std::nullopt;
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const ExactRational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_str();
}

}  // namespace bwlat

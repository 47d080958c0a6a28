#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bwlat/error.hpp"

namespace bwlat {

using Integer = mpz_class;
using ExactRational = mpq_class;

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows.begin()->size() : 0;
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) throw Error(ErrorKind::InvalidParameter, "ragged matrix literal");
      std::size_t j = 0;
      for (long v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidParameter, "matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    T tmp;
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (sgn(b(k, j)) == 0) continue;
          tmp = aik * b(k, j);
          c(i, j) += tmp;
        }
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c(a);
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix c(a);
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a) {
    Matrix c(a);
    for (auto& x : c.data_) x = -x;
    return c;
  }

  Matrix scaled(const T& s) const {
    Matrix c(*this);
    for (auto& x : c.data_) x *= s;
    return c;
  }

  // Stack rows of `below` under this matrix.
  Matrix vstack(const Matrix& below) const {
    if (rows_ == 0) return below;
    if (below.rows_ == 0) return *this;
    if (cols_ != below.cols_) throw Error(ErrorKind::InvalidParameter, "vstack width mismatch");
    Matrix c(rows_ + below.rows_, cols_);
    std::copy(data_.begin(), data_.end(), c.data_.begin());
    std::copy(below.data_.begin(), below.data_.end(), c.data_.begin() + data_.size());
    return c;
  }

  Matrix hstack(const Matrix& right) const {
    if (rows_ != right.rows_) throw Error(ErrorKind::InvalidParameter, "hstack height mismatch");
    Matrix c(rows_, cols_ + right.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) c(i, j) = (*this)(i, j);
      for (std::size_t j = 0; j < right.cols_; ++j) c(i, cols_ + j) = right(i, j);
    }
    return c;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix c(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) c(i, j) = (*this)(r0 + i, c0 + j);
    return c;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
  }

  const std::vector<T>& data() const { return data_; }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::InvalidParameter, "matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using QMatrix = Matrix<ExactRational>;

struct SnfResult {
  std::vector<Integer> invariant_factors;

  // Factors different from 1 (the discriminant-group invariants for a Gram matrix).
  std::vector<Integer> nontrivial() const;
  // Product of the nonzero factors.
  Integer nonzero_product() const;
};

SnfResult smith_normal_form(const IntMatrix& m);
std::size_t rank_mod2(const IntMatrix& m);
IntMatrix hnf_span(const IntMatrix& rows);
QMatrix rational_inverse(const IntMatrix& m);
QMatrix rational_inverse(const QMatrix& m);

Integer determinant(const IntMatrix& m);  // fraction-free (Bareiss)
std::size_t rational_rank(const IntMatrix& m);

// Rows x with x * m = 0, as an HNF basis of the integer left kernel.
IntMatrix integer_left_kernel(const IntMatrix& m);

QMatrix to_rational(const IntMatrix& m);
std::optional<IntMatrix> to_integer(const QMatrix& m);
// Smallest positive integer D with D*m integral, together with D*m.
std::pair<Integer, IntMatrix> clear_denominators(const QMatrix& m);

// Solve x * a = b for x over the rationals, with a of full row rank.
std::optional<QMatrix> solve_left(const IntMatrix& a, const IntMatrix& b);

std::string to_string(const Integer& v);
std::string to_string(const ExactRational& v);

}  // namespace bwlat

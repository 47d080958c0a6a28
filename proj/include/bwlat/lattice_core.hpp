#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bwlat/exact_algebra.hpp"
#include "bwlat/gf2_codes.hpp"

namespace bwlat {

// A list of ambient vectors sharing one power-of-two denominator, stored flat.
class VectorSet {
 public:
  VectorSet() = default;
  VectorSet(std::size_t dim, int denom_exp) : dim_(dim), denom_exp_(denom_exp) {}

  std::size_t dim() const { return dim_; }
  int denom_exp() const { return denom_exp_; }
  std::size_t size() const { return dim_ ? data_.size() / dim_ : 0; }
  std::span<const std::int64_t> operator[](std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
  void push_back(std::span<const std::int64_t> v) { data_.insert(data_.end(), v.begin(), v.end()); }
  void reserve(std::size_t n) { data_.reserve(n * dim_); }
  const std::vector<std::int64_t>& data() const { return data_; }

  // Scaled squared norm of vector i (true norm = result / 4^denom_exp).
  std::int64_t raw_norm(std::size_t i) const;
  ExactRational norm(std::size_t i) const;
  // Rows as an IntMatrix at this set's denominator.
  IntMatrix to_matrix() const;
  // Re-express at a larger denominator exponent.
  VectorSet rescaled(int new_exp) const;
  // Canonically sorted copy, for set comparisons.
  VectorSet sorted() const;
  bool same_set(const VectorSet& o) const;

 private:
  std::size_t dim_ = 0;
  int denom_exp_ = 0;
  std::vector<std::int64_t> data_;
};

class ScaledLattice {
 public:
  ScaledLattice() = default;
  // `basis` rows must be independent; the denominator is reduced where possible.
  ScaledLattice(IntMatrix basis, int denom_exp);
  // HNF-canonical lattice spanned by arbitrary generating rows.
  static ScaledLattice from_generators(const IntMatrix& rows, int denom_exp);
  static ScaledLattice zero(std::size_t ambient_dim) { return ScaledLattice(IntMatrix(0, ambient_dim), 0); }

  std::size_t rank() const { return basis_.rows(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  const IntMatrix& basis() const { return basis_; }
  int denom_exp() const { return denom_exp_; }

  const QMatrix& gram() const;
  std::optional<IntMatrix> integral_gram() const;
  bool is_integral() const;
  bool is_even() const;

  ScaledLattice canonical() const;
  // Basis rows rescaled to denominator 2^e, e >= denom_exp().
  IntMatrix basis_at(int e) const;

  // Integer coordinates of v / 2^v_exp in this basis, if v lies in the lattice.
  std::optional<std::vector<Integer>> coordinates(const std::vector<Integer>& v, int v_exp) const;
  std::optional<IntMatrix> coordinates(const IntMatrix& rows, int rows_exp) const;
  bool contains(const ScaledLattice& sub) const;
  bool contains_vector(std::span<const std::int64_t> v, int v_exp) const;
  bool same_span(const ScaledLattice& o) const;

 private:
  struct Cache;
  IntMatrix basis_;
  int denom_exp_ = 0;
  mutable std::shared_ptr<Cache> cache_;
  Cache& cache() const;
};

// Fast membership test for vectors with small entries in a full-rank lattice.
class MembershipTester {
 public:
  explicit MembershipTester(const ScaledLattice& l);
  bool contains(std::span<const std::int64_t> v, int v_exp) const;

 private:
  std::size_t n_ = 0;
  int lattice_exp_ = 0;
  std::vector<std::int64_t> z_;  // ambient x rank, row-major, coordinates = v * z / d
  Integer d_;
  std::int64_t d_odd_ = 1;
  int d_two_ = 0;
  bool fast_ = false;
  QMatrix pinv_;
  ScaledLattice lattice_;
};

struct Involution {
  QMatrix matrix;  // acts on ambient row vectors, x -> x * matrix
};

struct DecompositionResult {
  std::vector<std::vector<std::size_t>> summand_index_classes;
  std::vector<ScaledLattice> summand_lattices;
  VectorSet generating_vectors;
};

ExactRational lattice_determinant(const ScaledLattice& l);
// |super : sub| for sublattices of equal rank.
Integer lattice_index(const ScaledLattice& sub, const ScaledLattice& super);
ScaledLattice lattice_sum(const ScaledLattice& a, const ScaledLattice& b);
ScaledLattice lattice_sum(const std::vector<ScaledLattice>& parts);
ScaledLattice lattice_intersection(const ScaledLattice& a, const ScaledLattice& b);
ScaledLattice orthogonal_sum(const ScaledLattice& a, const ScaledLattice& b);
ScaledLattice scale_by_two_power(const ScaledLattice& l, int k);
// Image of the lattice under x -> x * t; t must have power-of-two denominators.
ScaledLattice apply_matrix(const ScaledLattice& l, const QMatrix& t);
ScaledLattice apply_matrix(const ScaledLattice& l, const IntMatrix& t);
// Matrix of t in lattice coordinates (B t = T B); throws NotAnIsometry unless t maps L onto L isometrically.
IntMatrix basis_action(const ScaledLattice& l, const QMatrix& t);
ScaledLattice orthogonal_complement(const ScaledLattice& m, const ScaledLattice& l);

ScaledLattice dual_lattice(const ScaledLattice& l);
SnfResult discriminant_invariants(const ScaledLattice& l);

// Exact rational LLL on a Gram matrix; returns unimodular U with U G U^T reduced.
IntMatrix lll_reduce_gram(const QMatrix& gram);
VectorSet certified_short_vectors(const ScaledLattice& l, const ExactRational& norm_bound);
ExactRational minimum_norm(const ScaledLattice& l);

// Orthogonal frame with <b_i, b_j> = 2^m delta_ij used by lattice_from_code.
ScaledLattice orthogonal_frame(int m, int n);
ScaledLattice lattice_from_code(int m, const BinaryCode& code);

DecompositionResult kneser_decompose(const ScaledLattice& l);
DecompositionResult kneser_decompose(const ScaledLattice& l, const VectorSet& generating);

ScaledLattice eigenlattice(const ScaledLattice& l, const Involution& t, int sign);
int defect(const ScaledLattice& l, const Involution& t);
int defect_by_jordan_blocks(const ScaledLattice& l, const Involution& t);

bool is_ssd(const ScaledLattice& m, const ScaledLattice& l);
bool is_rssd(const ScaledLattice& m, const ScaledLattice& l);
Involution ssd_involution(const ScaledLattice& m, const ScaledLattice& l);

void write_lattice(std::ostream& os, const ScaledLattice& l, bool with_gram = true);
ScaledLattice read_lattice(std::istream& is);
void write_vectors(std::ostream& os, const VectorSet& vs);

}  // namespace bwlat

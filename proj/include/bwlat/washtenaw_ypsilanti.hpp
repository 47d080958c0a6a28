#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bwlat/barnes_wall.hpp"

namespace bwlat {

struct TwoSpecialLattice {
  ScaledLattice lattice;
  IntMatrix p;  // x -> x * p, with p * p^T = 2
  int duality_level = 0;
  ExactRational min_norm;
  // Span of the minimal vectors, certified by construction.
  ScaledLattice smv;
  // Minimal vectors of L and of L[-1], when known by construction.
  std::optional<VectorSet> minimal_vectors;
  std::optional<VectorSet> lower_minimal_vectors;
  // The automorphism conditions of a Michigan lattice are accepted for BW-derived inputs, not decided.
  bool michigan_conditions_assumed = true;
  bool conforming = true;  // false for desk-scale analogues below the series' rank bound
  std::string description;

  std::size_t rank() const { return lattice.rank(); }
};

// L p^k, using p^-1 = p^T / 2.
ScaledLattice special_twist(const ScaledLattice& l, const IntMatrix& p, int k);
std::optional<int> is_two_special(const ScaledLattice& l, const IntMatrix& p);
TwoSpecialLattice two_special_from_bw(int d);

struct WashtenawData {
  int mvd = 0;
  ExactRational washtenaw_ratio;
};
WashtenawData washtenaw_data(const TwoSpecialLattice& l);

TwoSpecialLattice washtenawize(const TwoSpecialLattice& m, const BinaryCode& code);
// W(k) of the j-Washtenaw series; ranks above the cap raise ResourceCap.
TwoSpecialLattice washtenaw_series(int j, int k);
// The j = 1 recipe applied to BW_3 (rank 64), flagged non-conforming.
TwoSpecialLattice washtenaw_desk_analogue();

// Nondegenerate quadratic form on F_2^n, n <= 64: Q(x) = sum x_i diag_i + sum_{i<j} x_i x_j B_ij.
class QuadraticSpaceF2 {
 public:
  QuadraticSpaceF2() = default;
  QuadraticSpaceF2(int dim, Word diag, std::vector<Word> polar);
  static QuadraticSpaceF2 plus_type(int b);

  int dim() const { return dim_; }
  int q(Word x) const;
  int bilinear(Word x, Word y) const;
  Word diag() const { return diag_; }
  const std::vector<Word>& polar() const { return polar_; }
  // Rows e_1, f_1, e_2, f_2, ... with Q(e_i) = Q(f_i) = 0 and B(e_i, f_j) = delta_ij; throws if not plus type.
  std::vector<Word> hyperbolic_basis() const;
  std::uint64_t zero_count() const;  // exhaustive, dim <= 24

 private:
  int dim_ = 0;
  Word diag_ = 0;
  std::vector<Word> polar_;
};

// Linear maps on F_2^n act on row vectors: x -> sum over set bits i of rows[i].
using BitMatrix = std::vector<Word>;
Word apply(const BitMatrix& m, Word x);
BitMatrix compose(const BitMatrix& first, const BitMatrix& second);
BitMatrix bit_identity(int n);
std::size_t bit_rank(std::vector<Word> rows);
bool is_isometry(const QuadraticSpaceF2& v, const BitMatrix& g);

struct AvoidingMap {
  BitMatrix zeta;
  bool avoiding = false;
  std::uint64_t seed = 0;
  std::uint64_t attempts = 0;
};
bool avoids(const BitMatrix& zeta, const std::vector<Word>& w1, const std::vector<Word>& w2);
// Seeded rejection sampling over products of orthogonal transvections; the first candidate is the identity.
// With demand_k set, also requires dim(W1 zeta cap W2^perp) = demand_k.
AvoidingMap sample_avoiding_map(const QuadraticSpaceF2& v, const std::vector<Word>& w1, const std::vector<Word>& w2,
                                std::uint64_t seed, std::optional<int> demand_k = std::nullopt,
                                std::uint64_t max_attempts = 10000);

// The discriminant section M[-1]/M of a level-1 lattice.
struct DiscriminantSection {
  ScaledLattice upper;  // M[-1]
  IntMatrix reduction;  // M-coordinates in the M[-1] basis, mod 2 echelon rows
  std::vector<int> pivots;
  std::vector<int> free_columns;  // M[-1] basis vectors representing a basis of the quotient
  QuadraticSpaceF2 space;
  Word section_of(const std::vector<Integer>& upper_coords) const;
  std::vector<std::int64_t> representative(Word x) const;  // ambient, at upper.denom_exp()
};
DiscriminantSection discriminant_section(const TwoSpecialLattice& m);
// Images of the minimal vectors of M[-1]: the cosets and their span.
std::vector<Word> minimal_cosets(const TwoSpecialLattice& m, const DiscriminantSection& s);
std::vector<Word> smv_section(const TwoSpecialLattice& m, const DiscriminantSection& s);

struct YpsilantiResult {
  ScaledLattice lattice;
  bool even = false;
  Integer determinant;
  bool intersections_ok = false;  // L cap V_i = M_i
  bool projections_ok = false;    // projections are M_i[-1]
};
YpsilantiResult build_ypsilanti(const TwoSpecialLattice& m, const DiscriminantSection& s, const BitMatrix& zeta);

struct SeparationReport {
  bool separated = true;
  std::optional<std::vector<std::int64_t>> cross_vector;  // ambient over 2^denom_exp, when not separated
  int denom_exp = 0;
  ExactRational cross_norm;
};
SeparationReport smv_separation_check(const YpsilantiResult& n, const TwoSpecialLattice& m,
                                      const DiscriminantSection& s, const BitMatrix& zeta);

struct YpsilantiCertificate {
  YpsilantiResult result;
  AvoidingMap zeta;
  SeparationReport separation;
};
// Desk-scale analogue: two copies of the Washtenawized BW_3 glued by a sampled avoiding isometry.
// force_nonavoiding substitutes the identity, which matches every minimal coset with itself.
YpsilantiCertificate ypsilanti_desk_analogue(std::uint64_t seed, bool force_nonavoiding = false);
void write_certificate(std::ostream& os, const YpsilantiCertificate& c);
// Re-derives every certificate line from the stored zeta; throws Parse on any mismatch.
YpsilantiCertificate read_and_verify_certificate(std::istream& is);

struct SurveyClass {
  int k = 0;
  std::size_t size = 0;
  bool divisible_by_h = false;
  std::size_t one_sided_orbits = 0;
  bool one_sided_regular = false;
  std::size_t two_sided_orbits = 0;  // H x H orbits; 0 for the general linear variant
};
struct SurveyReport {
  int b = 0, a = 0;
  bool general_linear = false;
  std::size_t group_order = 0;
  std::size_t stabilizer_order = 0;  // |H|
  std::vector<SurveyClass> classes;  // nonempty k only, increasing
};
// W1 = W2 = span(e_1..e_a) in the plus-type space of dimension 2b.
SurveyReport avoiding_maps_survey(int b, int a, bool general_linear = false);
std::vector<BitMatrix> orthogonal_group_plus(int b);

}  // namespace bwlat

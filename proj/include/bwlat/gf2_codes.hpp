#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bwlat {

using Word = std::uint64_t;  // bit i = coordinate i; codes have length <= 64

inline int weight(Word w) { return __builtin_popcountll(w); }
inline int dot2(Word a, Word b) { return __builtin_popcountll(a & b) & 1; }

class BinaryCode {
 public:
  BinaryCode() = default;
  // Span of `words`; dependent words are dropped.
  BinaryCode(int length, const std::vector<Word>& words);

  int length() const { return length_; }
  int dimension() const { return static_cast<int>(gens_.size()); }
  // Reduced row echelon generators; pivot of row i is pivots()[i].
  const std::vector<Word>& generators() const { return gens_; }
  const std::vector<int>& pivots() const { return pivots_; }

  bool contains(Word w) const;
  Word reduce(Word w) const;  // remainder after elimination by the generators
  Word full_mask() const { return length_ == 64 ? ~Word{0} : ((Word{1} << length_) - 1); }

  // Visit every codeword (2^dimension of them) in Gray-code order.
  void for_each_codeword(const std::function<void(Word)>& fn) const;
  std::vector<Word> codewords() const;

  bool operator==(const BinaryCode& o) const { return length_ == o.length_ && gens_ == o.gens_; }

 private:
  int length_ = 0;
  std::vector<Word> gens_;
  std::vector<int> pivots_;
};

struct CodeProperties {
  std::optional<int> min_weight;
  bool is_doubly_even = false;
  bool is_self_orthogonal = false;
  bool is_indecomposable = false;
  std::vector<std::vector<int>> decomposition_partition;
};

BinaryCode hamming(int r);
BinaryCode extended_hamming(int r);
BinaryCode simplex(int r);
BinaryCode extended_simplex(int r);
BinaryCode annihilator(const BinaryCode& c);
BinaryCode direct_sum(const BinaryCode& a, const BinaryCode& b);
CodeProperties code_properties(const BinaryCode& c);
std::vector<int> weight_distribution(const BinaryCode& c);

// Span of indicators of codimension-2 affine subspaces of F_2^d, coordinates labelled by F_2^d.
BinaryCode code_from_affine_codim2(int d);
// Span of indicators of affine subspaces of codimension <= 2; equals the above for d >= 2.
BinaryCode sign_code(int a);
BinaryCode indecomposable_doubly_even(int t);

struct AffineSubspace {
  int ambient_dim = 0;
  std::uint32_t basepoint = 0;
  std::vector<std::uint32_t> direction_basis;

  bool contains(std::uint32_t x) const;
  std::vector<std::uint32_t> points() const;  // basepoint + sum of selected directions, bit j of the index selects direction j
};

bool is_affine_subspace(const std::vector<std::uint32_t>& points, int d);
// Each affine subspace of F_2^d of dimension a exactly once.
void for_each_affine_subspace(int d, int a, const std::function<void(const AffineSubspace&)>& fn);

void write_code(std::ostream& os, const BinaryCode& c);
BinaryCode read_code(std::istream& is);

}  // namespace bwlat

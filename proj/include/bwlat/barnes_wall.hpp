#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "bwlat/lattice_core.hpp"

namespace bwlat {

struct BWLattice {
  int d = 0;
  ScaledLattice lattice;
  int duality_level = 0;
  IntMatrix f;  // fourvolution, x -> x * f
  // Involutions of the last doubling step (empty at d = 1).
  IntMatrix t1, t2, t12, t12p;
  std::vector<IntMatrix> lower_generators;
  std::shared_ptr<const BWLattice> child;  // both constituents are copies of the previous level
  // M1[1-r], M2[1-r], M12[-r], M12'[-r] inside the ambient space, r the child's duality level.
  ScaledLattice m1, m2, m12, m12p;

  std::size_t rank() const { return lattice.rank(); }
  int min_norm() const { return 1 << (d / 2); }
};

using BWPtr = std::shared_ptr<const BWLattice>;

BWPtr build_bw(int d);

ScaledLattice sultry_twist(const ScaledLattice& l, const IntMatrix& f, int k, bool check_invariant = true);
ScaledLattice twist(const BWLattice& bw, int k);
// The r in {0,1} with dual(L) = L[-r], decided by an HNF comparison.
int duality_level(const BWLattice& bw);

Integer minimal_vector_count(int d);

struct Labeling {
  int d = 0;
  std::vector<std::uint32_t> label_of_coordinate;
  std::vector<std::uint32_t> coordinate_of_label;
  std::vector<int> sign_of_label;
};

// Anchor twist level whose minimal vectors include the standard frame.
int anchor_level(int d);
Labeling compute_labeling(const BWLattice& bw);
// Denominator exponent used for structurally emitted vectors of L[q].
int structural_denom_exp(int d, int q);

// Every minimal vector of L[q] exactly once, as integer coordinates over 2^structural_denom_exp(d, q).
void for_each_minimal_vector(const BWLattice& bw, const Labeling& lab, int q,
                             const std::function<void(std::span<const std::int64_t>)>& fn);
VectorSet minimal_vectors_structural(const BWLattice& bw, int q);

struct StreamReport {
  std::uint64_t count = 0;
  std::uint64_t wrong_norm = 0;
  std::uint64_t outside_lattice = 0;
  std::uint64_t duplicates = 0;
  ExactRational norm;
};
// Streams the structural set, checking norm, membership in L[q] and distinctness.
StreamReport verify_structural_stream(const BWLattice& bw, int q);

struct ExponentInterval {
  int d = 0, p = 0, q = 0;
  std::set<int> values;
};
ExponentInterval exponent_interval(int d, int p, int q);
struct DotExponentReport {
  std::set<int> exponents;  // k with +-2^k realized
  bool zero_realized = false;
  bool all_powers_of_two = true;
};
// Exhaustive over minimal vectors of L[p] and L[q].
DotExponentReport realized_dot_exponents(const BWLattice& bw, int p, int q);
bool verify_dot_exponents(const BWLattice& bw, int p, int q);

struct SultryFrame {
  VectorSet representatives;  // one vector of each +- pair
};
SultryFrame sultry_frame(const BWLattice& bw, std::span<const std::int64_t> x, int x_exp);

struct LayerReport {
  std::map<int, std::size_t> layer_sizes;  // k -> |A(L, x, q, k)|
  bool zoop2 = true;
};
LayerReport layers(const BWLattice& bw, const SultryFrame& frame, int q);

struct GenerationChecks {
  bool three_quarter = false;
  bool two_quarter = false;
  bool commutator_dense = false;
};
GenerationChecks generation_checks(const BWLattice& bw);

struct LowerGroupReport {
  std::size_t order = 0;
  bool center_is_pm1 = false;
  bool squares_central = false;
  bool commutators_central = false;
  bool trivial_on_quotient = false;
  bool is_extraspecial_like = false;
};
LowerGroupReport lower_group_closure(const BWLattice& bw, std::size_t cap = 4096);
std::vector<IntMatrix> lower_group_elements(const BWLattice& bw, std::size_t cap = 4096);

int frame_d_invariant(const VectorSet& frame, const ScaledLattice& l, const ScaledLattice& m);

struct E8Frame {
  std::string name;
  VectorSet vectors;  // 8 representatives, one per +- pair
  bool is_frame = false;
  int d_invariant = -1;
};
struct E8FrameReport {
  ScaledLattice e8;
  ScaledLattice e8_twist;  // L[1] = span of x_i +- x_j and the all-halves vector
  std::vector<E8Frame> frames;
};
E8FrameReport e8_frame_orbits();

}  // namespace bwlat

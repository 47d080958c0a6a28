#pragma once

#include <string>
#include <vector>

#include "bwlat/exact_algebra.hpp"

namespace bwlat {

// Classical Bernoulli numbers, B_1 = -1/2.
ExactRational bernoulli_classical(int n);
// Even-index magnitudes |B_{2j}| (B_1 = 1/6, B_2 = 1/30, ...), the convention used by mass().
ExactRational bernoulli(int j);

struct MassValue {
  int n = 0;
  ExactRational value;
};
// Mass of even unimodular lattices of rank n, n a positive multiple of 8.
MassValue mass(int n);

// a0 * log2(x)^a1 * 2^(a2 x) * x^a3
struct DominantTerm {
  ExactRational a0;
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;
};
std::string to_string(const DominantTerm& t, const std::string& var);

ExactRational upsilon(const ExactRational& q);
// Dominant term of log2 mass(n), in n.
DominantTerm dtl_mass();
// Lower bound for the dominant term of log2 of the number of cousins of rank 2^d, in d.
DominantTerm dtl_upsilon_lower(int j);
// Ratio of the two dominant terms at n = 2^d: upsilon(2^-j) / 4.
ExactRational dtl_ratio(int j);

struct AsymptoticsRow {
  int j = 0;
  ExactRational q, upsilon, ratio;
};
std::vector<AsymptoticsRow> asymptotics_table(int rows = 10);
// Decimal rendering with the given significant digits, rounding half up, no leading zero before the point.
std::string format_significant(const ExactRational& value, int digits = 10);
std::string format_row(const AsymptoticsRow& row);

Integer minkowski_bound(int n);
Integer omega_plus_order(int n, long q);

}  // namespace bwlat

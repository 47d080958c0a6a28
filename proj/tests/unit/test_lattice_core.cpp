#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "bwlat/lattice_core.hpp"

using namespace bwlat;

namespace {

ScaledLattice lat(std::initializer_list<std::initializer_list<long>> rows, int e = 0) {
  return ScaledLattice(IntMatrix::from_rows(rows), e);
}

ScaledLattice a2() { return lat({{1, -1, 0}, {0, 1, -1}}); }
ScaledLattice d4() { return lat({{1, -1, 0, 0}, {0, 1, -1, 0}, {0, 0, 1, -1}, {0, 0, 1, 1}}); }
ScaledLattice a1() { return lat({{1, -1}}); }

// Every lattice vector of norm <= bound, by a box search on coefficients sized from the inverse Gram matrix.
std::set<std::vector<Integer>> brute_short_vectors(const ScaledLattice& l, const ExactRational& bound) {
  const std::size_t n = l.rank();
  const QMatrix ginv = rational_inverse(l.gram());
  std::vector<long> box(n);
  for (std::size_t i = 0; i < n; ++i)
    box[i] = static_cast<long>(std::floor(std::sqrt(bound.get_d() * ginv(i, i).get_d()) + 1e-9));
  std::set<std::vector<Integer>> out;
  std::vector<long> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = -box[i];
  while (true) {
    std::vector<Integer> v(l.ambient_dim(), 0);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i]) zero = false;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += c[i] * l.basis()(i, j);
    }
    Integer raw = 0;
    for (const auto& x : v) raw += x * x;
    ExactRational norm(raw, Integer(1) << (2 * l.denom_exp()));
    norm.canonicalize();
    if (!zero && norm <= bound) out.insert(v);
    std::size_t k = 0;
    while (k < n && c[k] == box[k]) c[k] = -box[k], ++k;
    if (k == n) break;
    ++c[k];
  }
  return out;
}

std::set<std::vector<Integer>> as_set(const VectorSet& vs, int e) {
  VectorSet r = vs.rescaled(e);
  std::set<std::vector<Integer>> out;
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::vector<Integer> v;
    for (auto x : r[i]) v.push_back(Integer(static_cast<long>(x)));
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("lattice_core") {
  TEST_CASE("root lattices have the classical root counts") {
    CHECK(certified_short_vectors(a2(), 2).size() == 6);
    CHECK(certified_short_vectors(d4(), 2).size() == 24);
    CHECK(minimum_norm(d4()) == 2);
    ScaledLattice e8 = lattice_from_code(1, extended_hamming(3));
    CHECK(e8.is_even());
    CHECK(lattice_determinant(e8) == 1);
    CHECK(minimum_norm(e8) == 2);
    CHECK(certified_short_vectors(e8, 2).size() == 240);
  }

  TEST_CASE("short vector enumeration agrees with a box search") {
    std::vector<ScaledLattice> cases = {
        a2(), d4(), lat({{3, 1, 0}, {1, 4, 1}, {0, 2, 5}}), lat({{2, 1, 1, 0}, {0, 3, 1, 1}, {1, 0, 2, 2}}),
        lat({{1, 1}, {1, -1}}, 1)};
    for (const auto& l : cases)
      for (ExactRational bound : {ExactRational(2), ExactRational(6), ExactRational(13)}) {
        const VectorSet got = certified_short_vectors(l, bound);
        REQUIRE(got.denom_exp() <= l.denom_exp());
        CHECK(as_set(got, l.denom_exp()) == brute_short_vectors(l, bound));
      }
  }

  TEST_CASE("dual lattice and discriminant group") {
    ScaledLattice d = dual_lattice(d4());
    CHECK(dual_lattice(d).same_span(d4()));
    CHECK(lattice_determinant(d4()) * lattice_determinant(d) == 1);
    CHECK(lattice_index(d4(), d) == 4);
    auto inv = discriminant_invariants(d4()).nontrivial();
    CHECK(inv == std::vector<Integer>{2, 2});
    CHECK(discriminant_invariants(a2()).nontrivial() == std::vector<Integer>{3});
  }

  TEST_CASE("sums, intersections and indices") {
    ScaledLattice z2 = lat({{1, 0}, {0, 1}});
    ScaledLattice x = lat({{2, 0}, {0, 1}});
    ScaledLattice y = lat({{1, 0}, {0, 3}});
    CHECK(lattice_sum(x, y).same_span(z2));
    CHECK(lattice_intersection(x, y).same_span(lat({{2, 0}, {0, 3}})));
    CHECK(lattice_index(lat({{2, 0}, {0, 3}}), z2) == 6);
    CHECK(z2.contains(x));
    CHECK_FALSE(x.contains(z2));
    CHECK(scale_by_two_power(z2, 1).same_span(lat({{2, 0}, {0, 2}})));
    CHECK(scale_by_two_power(z2, -1).same_span(lat({{1, 0}, {0, 1}}, 1)));
  }

  TEST_CASE("kneser decomposition splits orthogonal sums") {
    ScaledLattice l = orthogonal_sum(orthogonal_sum(a2(), a1()), a1());
    auto dec = kneser_decompose(l);
    CHECK(dec.summand_lattices.size() == 3);
    CHECK(lattice_sum(dec.summand_lattices).same_span(l));
    CHECK(kneser_decompose(d4()).summand_lattices.size() == 1);
  }

  TEST_CASE("ssd involutions and their defect") {
    ScaledLattice z2 = lat({{1, 0}, {0, 1}});
    ScaledLattice m = lat({{1, 1}});
    CHECK(is_ssd(m, z2));
    CHECK(is_rssd(m, z2));
    Involution t = ssd_involution(m, z2);
    CHECK(eigenlattice(z2, t, -1).same_span(m));
    CHECK(eigenlattice(z2, t, 1).same_span(lat({{1, -1}})));
    CHECK(defect(z2, t) == 1);
    CHECK(defect_by_jordan_blocks(z2, t) == 1);
    CHECK_FALSE(is_ssd(lat({{1, 2}}), z2));
  }

  TEST_CASE("basis action rejects non-isometries") {
    QMatrix swap(2, 2);
    swap(0, 1) = 1;
    swap(1, 0) = 1;
    ScaledLattice z2 = lat({{1, 0}, {0, 1}});
    CHECK(basis_action(z2, swap) == IntMatrix::from_rows({{0, 1}, {1, 0}}));
    QMatrix shear = QMatrix::identity(2);
    shear(0, 1) = 1;
    CHECK_THROWS_AS(basis_action(z2, shear), Error);
  }

  TEST_CASE("lattice files round trip and reject a wrong gram block") {
    std::stringstream ss;
    write_lattice(ss, d4());
    CHECK(read_lattice(ss).same_span(d4()));
    std::stringstream bad("lattice 2 2 0\n1 0\n0 1\ngram\n1 0\n0 2\n");
    CHECK_THROWS_AS(read_lattice(bad), Error);
    std::stringstream dep("lattice 2 2 0\n1 0\n2 0\n");
    CHECK_THROWS_AS(read_lattice(dep), Error);
  }
}

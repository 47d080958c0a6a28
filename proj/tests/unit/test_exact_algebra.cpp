#include <doctest.h>

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

#include "bwlat/exact_algebra.hpp"

using namespace bwlat;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

Integer leibniz_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Integer term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Invariant factors from gcds of k x k minors.
std::vector<Integer> determinantal_factors(const IntMatrix& m) {
  std::vector<Integer> divisors{1};
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rows[i], cols[j]);
        Integer d = leibniz_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      });
    });
    if (g == 0) break;
    divisors.push_back(g);
  }
  std::vector<Integer> factors;
  for (std::size_t k = 1; k < divisors.size(); ++k) factors.push_back(divisors[k] / divisors[k - 1]);
  return factors;
}

std::vector<Integer> nonzero(const std::vector<Integer>& v) {
  std::vector<Integer> out;
  for (const auto& x : v)
    if (x != 0) out.push_back(abs(x));
  return out;
}

}  // namespace

TEST_SUITE("exact_algebra") {
  TEST_CASE("smith normal form agrees with determinantal divisors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 2 + trial % 3, c = 2 + (trial / 3) % 3;
      IntMatrix m = random_matrix(rng, r, c, 6);
      if (trial % 5 == 0) m = m * IntMatrix::identity(c).scaled(Integer(2));
      CHECK(nonzero(smith_normal_form(m).invariant_factors) == determinantal_factors(m));
    }
  }

  TEST_CASE("bareiss determinant matches the permutation expansion") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 6; ++n)
      for (int trial = 0; trial < 5; ++trial) {
        IntMatrix m = random_matrix(rng, n, n, 9);
        CHECK(determinant(m) == leibniz_det(m));
      }
  }

  TEST_CASE("rational inverse is a two-sided inverse") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
      IntMatrix m = random_matrix(rng, 4, 4, 5);
      if (determinant(m) == 0) continue;
      QMatrix inv = rational_inverse(m);
      QMatrix qm = to_rational(m);
      CHECK(qm * inv == QMatrix::identity(4));
      CHECK(inv * qm == QMatrix::identity(4));
    }
  }

  TEST_CASE("singular matrices have no inverse") {
    IntMatrix m = IntMatrix::from_rows({{1, 2}, {2, 4}});
    CHECK_THROWS_AS(rational_inverse(m), Error);
  }

  TEST_CASE("hnf span is canonical under unimodular row operations") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      IntMatrix m = random_matrix(rng, 3, 5, 7);
      IntMatrix u = IntMatrix::from_rows({{1, 3, 0}, {0, 1, 0}, {-2, -6, 1}});
      CHECK(hnf_span(u * m) == hnf_span(m));
      CHECK(hnf_span(m.vstack(m.block(0, 0, 1, 5).scaled(Integer(4)))) == hnf_span(m));
    }
  }

  TEST_CASE("left kernel rows annihilate the matrix") {
    IntMatrix m = IntMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}, {2, 4}});
    IntMatrix k = integer_left_kernel(m);
    CHECK(k.rows() == 2);
    CHECK(k * m == IntMatrix(2, 2));
  }

  TEST_CASE("rank mod 2 differs from rational rank for even minors") {
    IntMatrix m = IntMatrix::from_rows({{2, 0}, {0, 1}});
    CHECK(rational_rank(m) == 2);
    CHECK(rank_mod2(m) == 1);
  }

  TEST_CASE("solve_left recovers coefficients") {
    IntMatrix a = IntMatrix::from_rows({{1, 1, 0}, {0, 2, 1}});
    IntMatrix x = IntMatrix::from_rows({{3, -1}});
    auto sol = solve_left(a, x * a);
    REQUIRE(sol);
    CHECK(*sol == to_rational(x));
    CHECK_FALSE(solve_left(a, IntMatrix::from_rows({{0, 0, 1}})).has_value());
  }
}

#include <doctest.h>

#include "bwlat/asymptotics.hpp"
#include "bwlat/washtenaw_ypsilanti.hpp"

using namespace bwlat;

namespace {

// Akiyama-Tanigawa; yields B_n with B_1 = +1/2.
ExactRational bernoulli_oracle(int n) {
  std::vector<ExactRational> a(n + 1);
  for (int m = 0; m <= n; ++m) {
    a[m] = ExactRational(1, m + 1);
    for (int j = m; j >= 1; --j) {
      a[j - 1] = j * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
  }
  return a[0];
}

Integer factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// |W(E8)| as the product of the degrees of its basic invariants.
Integer weyl_e8_order() { return Integer(2) * 8 * 12 * 14 * 18 * 20 * 24 * 30; }

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("bernoulli numbers agree with Akiyama-Tanigawa") {
    for (int n = 0; n <= 60; ++n) {
      ExactRational want = bernoulli_oracle(n);
      if (n == 1) want = -want;
      CHECK(bernoulli_classical(n) == want);
    }
    for (int j = 1; j <= 30; ++j) CHECK(bernoulli(j) == abs(bernoulli_oracle(2 * j)));
    CHECK(bernoulli(1) == ExactRational(1, 6));
    CHECK(bernoulli(2) == ExactRational(1, 30));
    CHECK(bernoulli(6) == ExactRational(691, 2730));
  }

  TEST_CASE("mass in rank 8 is the reciprocal of the E8 Weyl group order") {
    CHECK(weyl_e8_order() == 696729600);
    CHECK(mass(8).value == ExactRational(Integer(1), weyl_e8_order()));
  }

  TEST_CASE("mass in rank 16 counts E8+E8 and D16+") {
    const Integer e8e8 = 2 * weyl_e8_order() * weyl_e8_order();
    const Integer d16 = (Integer(1) << 15) * factorial(16);
    ExactRational want = ExactRational(Integer(1), e8e8) + ExactRational(Integer(1), d16);
    want.canonicalize();
    CHECK(mass(16).value == want);
  }

  TEST_CASE("mass formula matches a direct product of bernoulli numbers") {
    for (int n = 8; n <= 64; n += 8) {
      const int k = n / 2;
      ExactRational want = abs(bernoulli_oracle(k)) / n;
      for (int j = 1; j < k; ++j) want *= abs(bernoulli_oracle(2 * j)) / (4 * j);
      want.canonicalize();
      CHECK(mass(n).value == want);
    }
    const ExactRational m32 = mass(32).value;
    CHECK(m32 > 10000000);
    CHECK(m32 < 100000000);
    CHECK_THROWS_AS(mass(12), Error);
    CHECK_THROWS_AS(mass(0), Error);
  }

  TEST_CASE("upsilon and the asymptotics table") {
    CHECK(upsilon(ExactRational(1, 2)) == ExactRational(11, 8));
    CHECK_THROWS_AS(upsilon(ExactRational(0)), Error);
    CHECK_THROWS_AS(upsilon(ExactRational(3, 4)), Error);
    const std::vector<std::string> want = {
        "1 .5000000000 1.375000000 .3437500000",     "2 .2500000000 1.593750000 .3984375000",
        "3 .1250000000 1.773437500 .4433593750",     "4 .06250000000 1.880859375 .4702148438",
        "5 .03125000000 1.938964844 .4847412109",    "6 .01562500000 1.969116211 .4922790527",
        "7 .007812500000 1.984466553 .4961166382",   "8 .003906250000 1.992210388 .4980525970",
        "9 .001953125000 1.996099472 .4990248680",   "10 .0009765625000 1.998048306 .4995120764"};
    auto rows = asymptotics_table(10);
    REQUIRE(rows.size() == 10);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      CHECK(format_row(rows[i]) == want[i]);
      CHECK(rows[i].q == ExactRational(1, 1 << (i + 1)));
      CHECK(rows[i].ratio == rows[i].upsilon / 4);
      CHECK(dtl_ratio(static_cast<int>(i) + 1) == rows[i].ratio);
    }
  }

  TEST_CASE("significant-digit rendering rounds half up") {
    CHECK(format_significant(ExactRational(1, 3)) == ".3333333333");
    CHECK(format_significant(ExactRational(2, 3)) == ".6666666667");
    CHECK(format_significant(ExactRational(5, 2), 1) == "3");
    CHECK(format_significant(ExactRational(1, 8), 2) == ".13");
    CHECK(format_significant(ExactRational(123456, 1000), 4) == "123.5");
    CHECK(format_significant(ExactRational(1, 1024), 3) == ".000977");
  }

  TEST_CASE("dominant terms are symbolic") {
    DominantTerm m = dtl_mass();
    CHECK(m.a0 == ExactRational(1, 4));
    CHECK(m.a1 == 1);
    CHECK(m.a3 == 2);
    DominantTerm u = dtl_upsilon_lower(1);
    CHECK(u.a0 == upsilon(ExactRational(1, 2)) / 16);
    CHECK(to_string(u, "d") == "11/128 * 2^(2d) * d");
  }

  TEST_CASE("group orders and the Minkowski bound") {
    CHECK(omega_plus_order(3, 2) == factorial(8) / 2);
    CHECK(omega_plus_order(2, 2) == 36);
    for (int b = 1; b <= 3; ++b)
      CHECK(omega_plus_order(b, 2) * 2 == static_cast<unsigned long>(orthogonal_group_plus(b).size()));
    CHECK(minkowski_bound(1) == 2);
    CHECK(minkowski_bound(8) % weyl_e8_order() == 0);
  }
}

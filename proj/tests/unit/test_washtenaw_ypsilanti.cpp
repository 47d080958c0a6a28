#include <doctest.h>

#include <bit>
#include <map>
#include <numeric>
#include <sstream>

#include "bwlat/washtenaw_ypsilanti.hpp"

using namespace bwlat;

namespace {

// |O+(2b, 2)| = 2 * 2^(b(b-1)) * (2^b - 1) * prod_{i<b} (4^i - 1)
std::size_t orthogonal_plus_order(int b) {
  std::size_t n = std::size_t{2} << (b * (b - 1));
  n *= (std::size_t{1} << b) - 1;
  for (int i = 1; i < b; ++i) n *= (std::size_t{1} << (2 * i)) - 1;
  return n;
}

std::vector<Word> span_rows(int a) {
  std::vector<Word> w;
  for (int i = 0; i < a; ++i) w.push_back(Word{1} << (2 * i));
  return w;
}

// Avoiding isometries counted by k = dim(W1 g cap W1^perp), straight from the definitions.
std::map<int, std::size_t> brute_survey(int b, int a) {
  const QuadraticSpaceF2 v = QuadraticSpaceF2::plus_type(b);
  const auto w1 = span_rows(a);
  Word w1_mask = 0;
  for (Word w : w1) w1_mask |= w;
  std::map<int, std::size_t> counts;
  for (const auto& g : orthogonal_group_plus(b)) {
    bool avoiding = true;
    int perp = 0;
    for (Word c = 1; c < (Word{1} << a); ++c) {
      Word y = 0;
      for (int i = 0; i < a; ++i)
        if ((c >> i) & 1) y ^= apply(g, w1[i]);
      if ((y & ~w1_mask) == 0) avoiding = false;
      bool orth = true;
      for (Word w : w1) orth = orth && v.bilinear(y, w) == 0;
      perp += orth;
    }
    if (avoiding) ++counts[std::bit_width(static_cast<unsigned>(perp + 1)) - 1];
  }
  return counts;
}

const TwoSpecialLattice& desk() {
  static const TwoSpecialLattice w = washtenaw_desk_analogue();
  return w;
}

}  // namespace

TEST_SUITE("washtenaw_ypsilanti") {
  TEST_CASE("BW lattices are two-special with their fourvolution") {
    const int levels[] = {1, 0, 1};
    const int mvds[] = {2, 4, 8};
    for (int d = 2; d <= 4; ++d) {
      TwoSpecialLattice t = two_special_from_bw(d);
      auto r = is_two_special(t.lattice, t.p);
      REQUIRE(r);
      CHECK(*r == levels[d - 2]);
      WashtenawData w = washtenaw_data(t);
      CHECK(w.mvd == mvds[d - 2]);
      CHECK(w.washtenaw_ratio == 1);
    }
  }

  TEST_CASE("two-special detection on small examples") {
    ScaledLattice z2(IntMatrix::identity(2), 0);
    auto r = is_two_special(z2, IntMatrix::from_rows({{1, -1}, {1, 1}}));
    REQUIRE(r);
    CHECK(*r == 0);
    CHECK_FALSE(is_two_special(z2, IntMatrix::identity(2).scaled(Integer(2))).has_value());
    CHECK_FALSE(is_two_special(z2, IntMatrix::from_rows({{1, 1}, {0, 1}})).has_value());
  }

  TEST_CASE("washtenawization of BW_1 has the predicted minimum") {
    TwoSpecialLattice w = washtenawize(two_special_from_bw(1), extended_hamming(3));
    CHECK(w.rank() == 16);
    auto r = is_two_special(w.lattice, w.p);
    REQUIRE(r);
    CHECK(*r == 1);
    CHECK(minimum_norm(w.lattice) == w.min_norm);
    CHECK(w.smv.same_span(ScaledLattice::from_generators(
        certified_short_vectors(w.lattice, w.min_norm).to_matrix(),
        certified_short_vectors(w.lattice, w.min_norm).denom_exp())));
  }

  TEST_CASE("desk-scale washtenawization of BW_3") {
    const TwoSpecialLattice& w = desk();
    CHECK(w.rank() == 64);
    CHECK_FALSE(w.conforming);
    auto r = is_two_special(w.lattice, w.p);
    REQUIRE(r);
    CHECK(*r == 1);
    CHECK(w.lattice.is_even());
    CHECK(lattice_determinant(w.lattice) == ExactRational(Integer(1) << 32));
    WashtenawData data = washtenaw_data(w);
    CHECK(data.mvd == 16);
    CHECK(data.washtenaw_ratio == ExactRational(1, 2));
    REQUIRE(w.minimal_vectors);
    CHECK(w.minimal_vectors->size() == 8 * 240);
    MembershipTester in_w(w.lattice);
    for (std::size_t i = 0; i < w.minimal_vectors->size(); ++i) {
      CHECK(w.minimal_vectors->norm(i) == w.min_norm);
      CHECK(in_w.contains((*w.minimal_vectors)[i], w.minimal_vectors->denom_exp()));
    }
  }

  TEST_CASE("inadmissible codes and oversized series are rejected") {
    TwoSpecialLattice bw3 = two_special_from_bw(3);
    auto kind_of = [](auto&& fn) {
      try {
        fn();
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::Parse;
    };
    CHECK(kind_of([&] { washtenawize(bw3, hamming(3)); }) == ErrorKind::CodeNotAdmissible);
    CHECK(kind_of([&] { washtenawize(bw3, direct_sum(extended_hamming(3), extended_hamming(3))); }) ==
          ErrorKind::CodeNotAdmissible);
    CHECK(kind_of([&] { washtenawize(bw3, code_from_affine_codim2(4)); }) == ErrorKind::CodeNotAdmissible);
    CHECK(kind_of([] { washtenaw_series(1, 9); }) == ErrorKind::ResourceCap);
    CHECK(kind_of([] { washtenaw_series(1, 7); }) == ErrorKind::InvalidParameter);
  }

  TEST_CASE("first member of the 1-Washtenaw series") {
    TwoSpecialLattice w = washtenaw_series(1, 8);
    CHECK(w.rank() == 256);
    CHECK(w.conforming);
    auto r = is_two_special(w.lattice, w.p);
    REQUIRE(r);
    CHECK(*r == 1);
    CHECK(washtenaw_data(w).washtenaw_ratio == ExactRational(1, 2));
  }

  TEST_CASE("plus-type quadratic spaces") {
    for (int b = 1; b <= 4; ++b) {
      QuadraticSpaceF2 v = QuadraticSpaceF2::plus_type(b);
      CHECK(v.zero_count() == (std::uint64_t{1} << (2 * b - 1)) + (std::uint64_t{1} << (b - 1)));
      auto h = v.hyperbolic_basis();
      REQUIRE(h.size() == static_cast<std::size_t>(2 * b));
      for (int i = 0; i < b; ++i) {
        CHECK(v.q(h[2 * i]) == 0);
        CHECK(v.q(h[2 * i + 1]) == 0);
        for (int j = 0; j < b; ++j) {
          CHECK(v.bilinear(h[2 * i], h[2 * j + 1]) == (i == j));
          CHECK(v.bilinear(h[2 * i], h[2 * j]) == 0);
        }
      }
    }
  }

  TEST_CASE("orthogonal groups have the classical order") {
    for (int b = 1; b <= 3; ++b) {
      QuadraticSpaceF2 v = QuadraticSpaceF2::plus_type(b);
      auto g = orthogonal_group_plus(b);
      CHECK(g.size() == orthogonal_plus_order(b));
      for (std::size_t i = 0; i < g.size(); i += 97) {
        CHECK(is_isometry(v, g[i]));
        CHECK(bit_rank(g[i]) == static_cast<std::size_t>(2 * b));
      }
    }
  }

  TEST_CASE("avoiding map survey") {
    for (int b = 2; b <= 3; ++b)
      for (int a = 1; a <= b; ++a) {
        SurveyReport s = avoiding_maps_survey(b, a);
        CHECK(s.group_order == orthogonal_plus_order(b));
        const auto brute = brute_survey(b, a);
        CHECK(brute.size() == s.classes.size());
        for (std::size_t i = 0; i < s.classes.size(); ++i) {
          const SurveyClass& c = s.classes[i];
          CHECK(c.k == static_cast<int>(i));
          CHECK(c.size % s.stabilizer_order == 0);
          CHECK(c.divisible_by_h);
          CHECK(c.one_sided_regular);
          CHECK(c.one_sided_orbits * s.stabilizer_order == c.size);
          CHECK(c.two_sided_orbits == 1);
          CHECK(brute.count(c.k) == 1);
          if (brute.count(c.k)) CHECK(brute.at(c.k) == c.size);
        }
        CHECK(static_cast<int>(s.classes.size()) == std::min(a, b - a) + 1);
      }
    SurveyReport gl = avoiding_maps_survey(2, 1, true);
    CHECK(gl.group_order == 20160);
    CHECK_THROWS_AS(avoiding_maps_survey(3, 1, true), Error);
    CHECK_THROWS_AS(avoiding_maps_survey(2, 3), Error);
  }

  TEST_CASE("sampling is seeded and starts from the identity") {
    QuadraticSpaceF2 v = QuadraticSpaceF2::plus_type(3);
    const auto w1 = span_rows(1);
    std::vector<Word> w2 = {Word{1} << 1};
    AvoidingMap id = sample_avoiding_map(v, w1, w2, 5);
    CHECK(id.attempts == 1);
    CHECK(id.zeta == bit_identity(6));

    AvoidingMap a = sample_avoiding_map(v, w1, w1, 5);
    AvoidingMap b = sample_avoiding_map(v, w1, w1, 5);
    CHECK(a.zeta == b.zeta);
    CHECK(a.attempts == b.attempts);
    CHECK(a.attempts > 1);
    CHECK(is_isometry(v, a.zeta));
    CHECK(avoids(a.zeta, w1, w1));
    CHECK_FALSE(avoids(bit_identity(6), w1, w1));
  }

  TEST_CASE("discriminant section of the desk lattice") {
    const TwoSpecialLattice& w = desk();
    DiscriminantSection s = discriminant_section(w);
    CHECK(s.space.dim() == 32);
    CHECK(s.space.hyperbolic_basis().size() == 32);
    CHECK(minimal_cosets(w, s).size() == 120);
    auto smv = smv_section(w, s);
    CHECK(smv.size() == 16);
    CHECK(bit_rank(smv) == 16);
    for (Word x : smv) {
      CHECK(s.space.q(x) == 0);
      for (Word y : smv) CHECK(s.space.bilinear(x, y) == 0);
    }
    CHECK_THROWS_AS(discriminant_section(two_special_from_bw(3)), Error);
  }

  TEST_CASE("ypsilanti gluing and its negative control") {
    YpsilantiCertificate c = ypsilanti_desk_analogue(0);
    CHECK(c.zeta.avoiding);
    CHECK(c.result.even);
    CHECK(c.result.determinant == 1);
    CHECK(c.result.intersections_ok);
    CHECK(c.result.projections_ok);
    CHECK(c.separation.separated);
    CHECK(c.result.lattice.rank() == 128);
    CHECK(c.result.lattice.is_even());
    CHECK(lattice_determinant(c.result.lattice) == 1);

    YpsilantiCertificate bad = ypsilanti_desk_analogue(0, true);
    CHECK_FALSE(bad.zeta.avoiding);
    CHECK(bad.result.determinant == 1);
    CHECK_FALSE(bad.separation.separated);
    REQUIRE(bad.separation.cross_vector);
    const auto& v = *bad.separation.cross_vector;
    CHECK(bad.result.lattice.contains_vector(v, bad.separation.denom_exp));
    Integer raw = 0;
    bool left = false, right = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      raw += Integer(static_cast<long>(v[i])) * v[i];
      if (v[i] != 0) (i < v.size() / 2 ? left : right) = true;
    }
    CHECK(left);
    CHECK(right);
    ExactRational norm(raw, Integer(1) << (2 * bad.separation.denom_exp));
    norm.canonicalize();
    CHECK(norm == bad.separation.cross_norm);
    CHECK(bad.separation.cross_norm == desk().min_norm);
  }

  TEST_CASE("gluing by a non-isometry is rejected") {
    const TwoSpecialLattice& w = desk();
    DiscriminantSection s = discriminant_section(w);
    const int n = s.space.dim();
    bool tested = false;
    for (int j = 1; j < n && !tested; ++j) {
      BitMatrix z = bit_identity(n);
      z[0] ^= Word{1} << j;
      if (is_isometry(s.space, z)) continue;
      CHECK_THROWS_AS(build_ypsilanti(w, s, z), Error);
      tested = true;
    }
    CHECK(tested);
  }

  TEST_CASE("certificates round trip and reject tampering") {
    YpsilantiCertificate c = ypsilanti_desk_analogue(42);
    std::stringstream ss;
    write_certificate(ss, c);
    const std::string text = ss.str();
    std::stringstream in(text);
    YpsilantiCertificate back = read_and_verify_certificate(in);
    CHECK(back.zeta.zeta == c.zeta.zeta);
    CHECK(back.result.lattice.same_span(c.result.lattice));

    auto rejects = [](std::string t, const std::string& from, const std::string& to) {
      const auto pos = t.find(from);
      REQUIRE(pos != std::string::npos);
      t.replace(pos, from.size(), to);
      std::stringstream s(t);
      CHECK_THROWS_AS(read_and_verify_certificate(s), Error);
    };
    rejects(text, "determinant 1", "determinant 3");
    rejects(text, "separation 1", "separation 0");
    rejects(text, "seed 42", "seed 43");
    const auto zpos = text.find("zeta ");
    REQUIRE(zpos != std::string::npos);
    const auto row = text.find('\n', zpos) + 1;
    std::string flipped = text;
    flipped[row] = flipped[row] == '0' ? '1' : '0';
    std::stringstream s(flipped);
    CHECK_THROWS_AS(read_and_verify_certificate(s), Error);
  }
}

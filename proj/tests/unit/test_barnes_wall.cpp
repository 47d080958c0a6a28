#include <doctest.h>

#include <cmath>
#include <set>

#include "bwlat/barnes_wall.hpp"

using namespace bwlat;

namespace {

std::int64_t raw_dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Dot-product exponents between two independently enumerated minimal-vector sets.
struct Dots {
  std::set<int> exponents;
  bool zero = false;
  bool powers_of_two = true;
};
Dots brute_dots(const VectorSet& a, const VectorSet& b) {
  Dots out;
  const int shift = a.denom_exp() + b.denom_exp();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::int64_t v = std::llabs(raw_dot(a[i], b[j]));
      if (v == 0) {
        out.zero = true;
        continue;
      }
      if (v & (v - 1)) {
        out.powers_of_two = false;
        continue;
      }
      out.exponents.insert(__builtin_ctzll(static_cast<unsigned long long>(v)) - shift);
    }
  return out;
}

VectorSet exhaustive_minimal(const BWLattice& bw, int q) {
  ScaledLattice l = twist(bw, q);
  return certified_short_vectors(l, minimum_norm(l));
}

}  // namespace

TEST_SUITE("barnes_wall") {
  TEST_CASE("rank, evenness and determinant of BW_d") {
    const long dets[] = {1, 4, 1, 256, 1};
    for (int d = 1; d <= 5; ++d) {
      BWPtr bw = build_bw(d);
      CHECK(bw->rank() == (std::size_t{1} << d));
      CHECK(lattice_determinant(bw->lattice) == dets[d - 1]);
      if (d >= 2) CHECK(bw->lattice.is_even());
      CHECK(determinant(*bw->lattice.integral_gram()) == dets[d - 1]);
    }
    CHECK_THROWS_AS(build_bw(0), Error);
  }

  TEST_CASE("the fourvolution squares to -1 and doubles norms") {
    for (int d = 1; d <= 4; ++d) {
      BWPtr bw = build_bw(d);
      const std::size_t n = bw->f.rows();
      CHECK(bw->f * bw->f == -IntMatrix::identity(n));
      const IntMatrix g = IntMatrix::identity(n) - bw->f;
      CHECK(g * g.transpose() == IntMatrix::identity(n).scaled(Integer(2)));
      CHECK(twist(*bw, 2).same_span(scale_by_two_power(bw->lattice, 1)));
    }
  }

  TEST_CASE("duality level matches the dual lattice") {
    for (int d = 1; d <= 5; ++d) {
      BWPtr bw = build_bw(d);
      const int r = duality_level(*bw);
      CHECK(r == (d + 1) % 2);
      CHECK(dual_lattice(bw->lattice).same_span(twist(*bw, -r)));
    }
  }

  TEST_CASE("discriminant groups by smith normal form") {
    for (int d = 2; d <= 6; ++d) {
      auto nt = discriminant_invariants(build_bw(d)->lattice).nontrivial();
      if (d % 2) {
        CHECK(nt.empty());
      } else {
        CHECK(nt.size() == (std::size_t{1} << (d - 1)));
        for (const auto& x : nt) CHECK(x == 2);
      }
    }
  }

  TEST_CASE("minimal-vector count formula") {
    const long counts[] = {1, 4, 24, 240, 4320, 146880, 9694080};
    for (int d = 0; d <= 6; ++d) CHECK(minimal_vector_count(d) == counts[d]);
  }

  TEST_CASE("structural minimal vectors equal the exhaustive set") {
    for (int d = 2; d <= 4; ++d) {
      BWPtr bw = build_bw(d);
      for (int q = -1; q <= 1; ++q) {
        CAPTURE(d);
        CAPTURE(q);
        const VectorSet ex = exhaustive_minimal(*bw, q);
        const VectorSet st = minimal_vectors_structural(*bw, q);
        const int e = std::max(ex.denom_exp(), st.denom_exp());
        CHECK(ex.size() == minimal_vector_count(d));
        CHECK(ex.rescaled(e).same_set(st.rescaled(e)));
      }
    }
  }

  TEST_CASE("minimum norm 2^floor(d/2) by exhaustive search") {
    for (int d = 1; d <= 4; ++d) CHECK(minimum_norm(build_bw(d)->lattice) == (1 << (d / 2)));
  }

  TEST_CASE("structural stream at d = 5 is clean") {
    BWPtr bw = build_bw(5);
    StreamReport r = verify_structural_stream(*bw, 0);
    CHECK(r.count == 146880);
    CHECK(r.norm == 4);
    CHECK(r.wrong_norm == 0);
    CHECK(r.outside_lattice == 0);
    CHECK(r.duplicates == 0);
  }

  TEST_CASE("dot products of minimal vectors respect the exponent interval") {
    for (int d = 2; d <= 4; ++d) {
      BWPtr bw = build_bw(d);
      for (int p = -1; p <= 1; ++p)
        for (int q = p; q <= 1; ++q) {
          CAPTURE(d);
          CAPTURE(p);
          CAPTURE(q);
          const Dots brute = brute_dots(exhaustive_minimal(*bw, p), exhaustive_minimal(*bw, q));
          const DotExponentReport rep = realized_dot_exponents(*bw, p, q);
          CHECK(brute.powers_of_two);
          CHECK(brute.zero);
          CHECK(rep.exponents == brute.exponents);
          CHECK(rep.exponents == exponent_interval(d, p, q).values);
          CHECK(verify_dot_exponents(*bw, p, q));
          // Cauchy-Schwarz: 4^k <= mu(L[p]) mu(L[q]) = 2^(2 floor(d/2) + p + q)
          for (int k : rep.exponents) CHECK(2 * k <= 2 * (d / 2) + p + q);
        }
    }
  }

  TEST_CASE("exponent interval shifts by one under simultaneous twisting") {
    for (int d = 2; d <= 6; ++d)
      for (int p = -2; p <= 2; ++p)
        for (int q = -2; q <= 2; ++q) {
          std::set<int> shifted;
          for (int k : exponent_interval(d, p, q).values) shifted.insert(k + 1);
          CHECK(exponent_interval(d, p + 1, q + 1).values == shifted);
          CHECK(exponent_interval(d, p, q).values == exponent_interval(d, q, p).values);
        }
  }

  TEST_CASE("sultry frames and layers") {
    for (int d = 2; d <= 4; ++d) {
      BWPtr bw = build_bw(d);
      const VectorSet mv = minimal_vectors_structural(*bw, 0);
      const SultryFrame fr = sultry_frame(*bw, mv[0], mv.denom_exp());
      const VectorSet& reps = fr.representatives;
      REQUIRE(reps.size() == (std::size_t{1} << d));
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = i + 1; j < reps.size(); ++j) CHECK(raw_dot(reps[i], reps[j]) == 0);
      for (int q = -1; q <= 1; ++q) {
        LayerReport lr = layers(*bw, fr, q);
        CHECK(lr.zoop2);
        std::size_t total = 0;
        std::set<int> ks;
        for (auto [k, size] : lr.layer_sizes) total += size, ks.insert(k);
        CHECK(total == minimal_vector_count(d));
        CHECK(ks == exponent_interval(d, 0, q).values);
      }
    }
    BWPtr bw3 = build_bw(3);
    std::vector<std::int64_t> not_minimal(8, 0);
    not_minimal[0] = 4;
    CHECK_THROWS_AS(sultry_frame(*bw3, not_minimal, 0), Error);
  }

  TEST_CASE("generation properties for d = 2..5") {
    for (int d = 2; d <= 5; ++d) {
      GenerationChecks g = generation_checks(*build_bw(d));
      CHECK(g.three_quarter);
      CHECK(g.two_quarter);
      CHECK(g.commutator_dense);
    }
  }

  TEST_CASE("lower group is extraspecial of order 2^(1+2d)") {
    for (int d = 2; d <= 4; ++d) {
      BWPtr bw = build_bw(d);
      LowerGroupReport r = lower_group_closure(*bw);
      CHECK(r.order == (std::size_t{1} << (1 + 2 * d)));
      CHECK(r.center_is_pm1);
      CHECK(r.is_extraspecial_like);
      CHECK(r.trivial_on_quotient);
      // every element preserves the lattice and the form
      for (const auto& g : lower_group_elements(*bw)) {
        CHECK(g * g.transpose() == IntMatrix::identity(g.rows()));
        CHECK(apply_matrix(bw->lattice, g).same_span(bw->lattice));
      }
    }
  }

  TEST_CASE("E8 frame orbit representatives") {
    E8FrameReport r = e8_frame_orbits();
    CHECK(lattice_determinant(r.e8) == 1);
    CHECK(r.e8.is_even());
    CHECK(lattice_index(r.e8_twist, r.e8) == 16);
    REQUIRE(r.frames.size() == 4);
    for (int i = 0; i < 4; ++i) {
      CHECK(r.frames[i].is_frame);
      CHECK(r.frames[i].d_invariant == i + 1);
      CHECK(r.frames[i].vectors.size() == 8);
    }
  }
}

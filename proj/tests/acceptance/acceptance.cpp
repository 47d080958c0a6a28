#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "bwlat/asymptotics.hpp"
#include "bwlat/washtenaw_ypsilanti.hpp"

using namespace bwlat;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Adds a failed condition to the outcome; returns the condition.
bool expect(Outcome& o, bool cond, const std::string& what) {
  if (!cond) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
  return cond;
}

std::string set_string(const std::set<int>& s) {
  std::string r;
  for (int v : s) r += (r.empty() ? "" : ",") + std::to_string(v);
  return "{" + r + "}";
}

Outcome minimal_vector_counts() {
  Outcome o;
  const unsigned long want[] = {24, 240, 4320, 146880, 9694080};
  for (int d = 2; d <= 6; ++d) {
    BWPtr bw = build_bw(d);
    const StreamReport r = verify_structural_stream(*bw, 0);
    expect(o, r.count == want[d - 2], "d=" + std::to_string(d) + " count " + std::to_string(r.count));
    expect(o, r.wrong_norm == 0 && r.outside_lattice == 0 && r.duplicates == 0,
           "d=" + std::to_string(d) + " stream has bad vectors");
  }
  return o;
}

Outcome svp_agreement() {
  Outcome o;
  for (int d = 2; d <= 4; ++d) {
    BWPtr bw = build_bw(d);
    const VectorSet ex = certified_short_vectors(bw->lattice, minimum_norm(bw->lattice));
    const VectorSet st = minimal_vectors_structural(*bw, 0);
    const int e = std::max(ex.denom_exp(), st.denom_exp());
    expect(o, ex.rescaled(e).same_set(st.rescaled(e)), "d=" + std::to_string(d) + " sets differ");
  }
  return o;
}

Outcome discriminant_groups() {
  Outcome o;
  for (int d = 2; d <= 6; ++d) {
    const auto nt = discriminant_invariants(build_bw(d)->lattice).nontrivial();
    bool ok;
    if (d % 2) {
      ok = nt.empty();
    } else {
      ok = nt.size() == (std::size_t{1} << (d - 1));
      for (const auto& x : nt) ok = ok && x == 2;
    }
    expect(o, ok, "d=" + std::to_string(d) + " has " + std::to_string(nt.size()) + " nontrivial factors");
  }
  return o;
}

Outcome minimum_norms() {
  Outcome o;
  for (int d = 2; d <= 4; ++d) {
    const ExactRational mu = minimum_norm(build_bw(d)->lattice);
    expect(o, mu == (1 << (d / 2)), "d=" + std::to_string(d) + " mu " + to_string(mu));
  }
  for (int d = 5; d <= 6; ++d) {
    const StreamReport r = verify_structural_stream(*build_bw(d), 0);
    expect(o, r.norm == (1 << (d / 2)) && r.wrong_norm == 0 && r.count == minimal_vector_count(d),
           "d=" + std::to_string(d) + " structural norm " + to_string(r.norm));
  }
  return o;
}

Outcome exponent_intervals() {
  Outcome o;
  for (int d = 3; d <= 4; ++d) {
    BWPtr bw = build_bw(d);
    for (int p = -1; p <= 1; ++p)
      for (int q = -1; q <= 1; ++q) {
        const DotExponentReport r = realized_dot_exponents(*bw, p, q);
        const ExponentInterval want = exponent_interval(d, p, q);
        expect(o, r.zero_realized && r.all_powers_of_two && r.exponents == want.values,
               "d=" + std::to_string(d) + " p=" + std::to_string(p) + " q=" + std::to_string(q) + " realized " +
                   set_string(r.exponents) + " vs " + set_string(want.values));
      }
  }
  return o;
}

Outcome generation_properties() {
  Outcome o;
  for (int d = 2; d <= 5; ++d) {
    const GenerationChecks g = generation_checks(*build_bw(d));
    expect(o, g.three_quarter && g.two_quarter && g.commutator_dense, "d=" + std::to_string(d));
  }
  return o;
}

Outcome e8_frames() {
  Outcome o;
  const E8FrameReport r = e8_frame_orbits();
  std::set<int> inv;
  for (const auto& f : r.frames) {
    expect(o, f.is_frame, f.name + " is not a frame");
    inv.insert(f.d_invariant);
  }
  expect(o, r.frames.size() == 4 && inv == std::set<int>{1, 2, 3, 4}, "d-invariants " + set_string(inv));
  return o;
}

Outcome lower_groups() {
  Outcome o;
  for (int d = 2; d <= 4; ++d) {
    const LowerGroupReport r = lower_group_closure(*build_bw(d));
    expect(o, r.order == (std::size_t{1} << (1 + 2 * d)) && r.trivial_on_quotient,
           "d=" + std::to_string(d) + " order " + std::to_string(r.order));
  }
  return o;
}

Outcome washtenawization() {
  Outcome o;
  const TwoSpecialLattice m = two_special_from_bw(3);
  const TwoSpecialLattice w = washtenaw_desk_analogue();
  expect(o, w.rank() == 64, "rank " + std::to_string(w.rank()));
  const auto level = is_two_special(w.lattice, w.p);
  expect(o, level && *level == 1, "duality level");
  const ScaledLattice lower = special_twist(m.lattice, m.p, 1);
  IntMatrix copies(8 * lower.rank(), 8 * lower.ambient_dim());
  for (std::size_t c = 0; c < 8; ++c) copies.set_block(c * lower.rank(), c * lower.ambient_dim(), lower.basis());
  const Integer index = lattice_index(ScaledLattice(copies, lower.denom_exp()), w.lattice);
  expect(o, index == Integer(1) << 16, "glue index " + to_string(index));
  const WashtenawData data = washtenaw_data(w);
  expect(o, data.washtenaw_ratio == ExactRational(1, 2), "ratio " + to_string(data.washtenaw_ratio));
  return o;
}

Outcome ypsilanti() {
  Outcome o;
  const YpsilantiCertificate c = ypsilanti_desk_analogue(0);
  expect(o, c.result.lattice.rank() == 128, "rank");
  expect(o, c.result.even && c.result.determinant == 1, "not even unimodular");
  expect(o, c.separation.separated, "separation check failed");
  std::stringstream ss;
  write_certificate(ss, c);
  try {
    read_and_verify_certificate(ss);
  } catch (const Error& e) {
    expect(o, false, std::string("certificate: ") + e.what());
  }
  const YpsilantiCertificate bad = ypsilanti_desk_analogue(0, true);
  expect(o, !bad.separation.separated && bad.separation.cross_vector.has_value(),
         "negative control shows no cross vector");
  return o;
}

Outcome survey() {
  Outcome o;
  for (int b = 2; b <= 3; ++b)
    for (int a = 1; a <= b; ++a) {
      const SurveyReport s = avoiding_maps_survey(b, a);
      std::set<int> ks, want;
      for (const auto& c : s.classes) {
        ks.insert(c.k);
        expect(o, c.size % s.stabilizer_order == 0, "class size not divisible by |H|");
      }
      for (int k = 0; k <= std::min(a, b - a); ++k) want.insert(k);
      expect(o, ks == want, "b=" + std::to_string(b) + " a=" + std::to_string(a) + " k range " + set_string(ks));
    }
  return o;
}

Outcome mass_formula() {
  Outcome o;
  const Integer weyl = Integer(2) * 8 * 12 * 14 * 18 * 20 * 24 * 30;
  expect(o, mass(8).value == ExactRational(Integer(1), weyl), "mass(8) " + to_string(mass(8).value));
  const ExactRational m32 = mass(32).value;
  expect(o, m32 > 10000000 && m32 < 100000000, "mass(32) " + format_significant(m32));
  return o;
}

Outcome asymptotics() {
  Outcome o;
  const char* want[] = {"1 .5000000000 1.375000000 .3437500000",   "2 .2500000000 1.593750000 .3984375000",
                        "3 .1250000000 1.773437500 .4433593750",   "4 .06250000000 1.880859375 .4702148438",
                        "5 .03125000000 1.938964844 .4847412109",  "6 .01562500000 1.969116211 .4922790527",
                        "7 .007812500000 1.984466553 .4961166382", "8 .003906250000 1.992210388 .4980525970",
                        "9 .001953125000 1.996099472 .4990248680", "10 .0009765625000 1.998048306 .4995120764"};
  const auto rows = asymptotics_table(10);
  expect(o, rows.size() == 10, "row count");
  for (std::size_t i = 0; i < rows.size() && i < 10; ++i) {
    const std::string got = format_row(rows[i]);
    expect(o, got == want[i], "row " + std::to_string(i + 1) + ": " + got);
  }
  return o;
}

Outcome group_orders() {
  Outcome o;
  Integer a8 = 1;
  for (int i = 2; i <= 8; ++i) a8 *= i;
  a8 /= 2;
  expect(o, omega_plus_order(3, 2) == 20160 && a8 == 20160, "omega+(6,2) " + to_string(omega_plus_order(3, 2)));
  expect(o, minkowski_bound(8) % 696729600 == 0, "696729600 does not divide f(8)");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "minimal-vector counts for d = 2..6", 300, minimal_vector_counts},
      {2, "structural set equals the exhaustive SVP set for d = 2..4", 120, svp_agreement},
      {3, "discriminant groups for d = 2..6", 300, discriminant_groups},
      {4, "minimum norm 2^floor(d/2)", 300, minimum_norms},
      {5, "exponent intervals for d = 3, 4 and p, q in -1..1", 300, exponent_intervals},
      {6, "3/4-, 2/4-generation and commutator density for d = 2..5", 300, generation_properties},
      {7, "E8 frame orbit d-invariants 1, 2, 3, 4", 60, e8_frames},
      {8, "lower group order 2^(1+2d) for d = 2..4", 60, lower_groups},
      {9, "minimal Washtenawization of BW_3", 120, washtenawization},
      {10, "rank-128 Ypsilanti analogue and negative control", 300, ypsilanti},
      {11, "avoiding-map survey for b = 2, 3", 60, survey},
      {12, "mass formula in ranks 8 and 32", 1, mass_formula},
      {13, "asymptotics table for j = 1..10", 60, asymptotics},
      {14, "omega+(6,2) order and Minkowski divisibility", 60, group_orders},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) expect(o, false, "over the time budget");
    if (!o.pass) ++failures;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << secs << " s)";
    if (!o.pass) line << ": " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

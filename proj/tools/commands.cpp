#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bwlat/asymptotics.hpp"
#include "bwlat/washtenaw_ypsilanti.hpp"

namespace bwlat::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Every invariant the CLI can report as violated, with the statement it checks.
const std::map<std::string, std::string>& anchor_table() {
  static const std::map<std::string, std::string> table = {
      {"rank", "BW_d has rank 2^d"},
      {"evenness", "BW_d is even for d >= 2"},
      {"duality_level", "dual(BW_d) = BW_d[-r] with r = (d+1) mod 2"},
      {"discriminant_group", "discriminant group trivial for odd d, elementary abelian of rank 2^(d-1) for even d"},
      {"min_norm", "minimum norm 2^floor(d/2)"},
      {"minimal_vector_count", "minimal-vector count prod_{i=1..d} (2^i + 2)"},
      {"structural_stream", "structural minimal vectors lie in L[q], have minimal norm and are distinct"},
      {"three_quarter_generation", "3/4-generation of the twist by minimal vectors"},
      {"two_quarter_generation", "2/4-generation of the twist by minimal vectors"},
      {"commutator_density", "commutator density of the lower group"},
      {"lower_group_order", "lower group of order 2^(1+2d) acting trivially on L/L[1]"},
      {"exponent_interval", "inner products of minimal vectors of L[p] and L[q] are 0 or +-2^k with k in I(d,p,q)"},
      {"e8_frame_orbits", "four frame orbits in E8 with d-invariants 1, 2, 3, 4"},
      {"code_admissible", "doubly even, self-orthogonal and indecomposable gluing code"},
      {"washtenaw_level", "a Washtenawization flips the duality level"},
      {"washtenaw_index", "glue index 2^(2^(t-2) rank(M)) over the copies of M[1-r]"},
      {"washtenaw_ratio", "a Washtenawization halves the Washtenaw ratio"},
      {"ypsilanti_even_unimodular", "the glued lattice is even and unimodular"},
      {"ypsilanti_separation", "SMV(N) = SMV(M_1) + SMV(M_2) for an avoiding gluing map"},
      {"ypsilanti_negative_control", "a non-avoiding gluing map produces a cross minimal vector"},
      {"survey_k_range", "avoiding classes exist exactly for k = 0..min(a, b-a)"},
      {"survey_divisibility", "every class size is divisible by |H|"},
      {"mass_formula", "mass of even unimodular lattices from Bernoulli numbers"},
  };
  return table;
}

class Report {
 public:
  explicit Report(std::ostream& out) : out_(out) {}

  template <class T>
  void kv(const std::string& key, const T& value) {
    out_ << key << ": " << value << '\n';
  }

  void check(bool ok, const std::string& invariant, const std::string& expected, const std::string& actual) {
    if (ok) return;
    failures_.push_back({invariant, expected, actual});
  }

  int finish() {
    for (const auto& f : failures_) {
      out_ << "FAIL: " << f.invariant << '\n';
      out_ << "ANCHOR: " << anchor_table().at(f.invariant) << '\n';
      out_ << "EXPECTED: " << f.expected << '\n';
      out_ << "ACTUAL: " << f.actual << '\n';
    }
    out_ << "STATUS: " << (failures_.empty() ? "verified" : "failed") << '\n';
    return failures_.empty() ? kOk : kFailed;
  }

 private:
  struct Failure {
    std::string invariant, expected, actual;
  };
  std::ostream& out_;
  std::vector<Failure> failures_;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join(const std::set<int>& s) {
  std::string r;
  for (int v : s) r += (r.empty() ? "" : ",") + std::to_string(v);
  return "{" + r + "}";
}

// Writes to the named file, or to `out` when the path is empty.
void emit(const std::string& path, std::ostream& out, const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(out);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  fn(f);
  if (!f) throw Error(ErrorKind::Parse, "write to " + path + " failed");
}

void check_level(int d) {
  if (d < 1) throw UsageError("-d must be at least 1");
}

std::string discriminant_string(const SnfResult& snf) {
  auto nt = snf.nontrivial();
  if (nt.empty()) return "trivial";
  bool all_two = std::all_of(nt.begin(), nt.end(), [](const Integer& x) { return x == 2; });
  if (all_two) return "2^" + std::to_string(nt.size());
  std::string r;
  for (const auto& x : nt) r += (r.empty() ? "" : " x ") + ("Z/" + to_string(x));
  return r;
}

int cmd_build(int d, const std::string& path, bool no_gram, std::ostream& out) {
  check_level(d);
  BWPtr bw = build_bw(d);
  emit(path, out, [&](std::ostream& os) { write_lattice(os, bw->lattice, !no_gram); });
  if (!path.empty()) {
    Report rep(out);
    rep.kv("LATTICE", "BW_" + std::to_string(d));
    rep.kv("RANK", bw->rank());
    rep.kv("OUTPUT", path);
    return rep.finish();
  }
  return kOk;
}

int cmd_verify(int d, const std::string& suite, std::ostream& out) {
  check_level(d);
  Report rep(out);
  BWPtr bw = build_bw(d);
  const auto& l = bw->lattice;
  const std::size_t rank = std::size_t{1} << d;
  rep.kv("LATTICE", "BW_" + std::to_string(d));
  rep.kv("SUITE", suite);

  rep.kv("RANK", l.rank());
  rep.check(l.rank() == rank, "rank", std::to_string(rank), std::to_string(l.rank()));

  const bool even = l.is_even();
  rep.kv("EVEN", yes_no(even));
  if (d >= 2) rep.check(even, "evenness", "yes", yes_no(even));

  const int r = duality_level(*bw);
  rep.kv("DUALITY_LEVEL", r);
  rep.check(r == (d + 1) % 2, "duality_level", std::to_string((d + 1) % 2), std::to_string(r));

  const std::string disc = discriminant_string(discriminant_invariants(l));
  const std::string disc_expected = d % 2 ? "trivial" : "2^" + std::to_string(rank / 2);
  rep.kv("DISCRIMINANT", disc);
  rep.check(disc == disc_expected, "discriminant_group", disc_expected, disc);

  const Integer mu_expected = Integer(bw->min_norm());
  const Integer count_expected = minimal_vector_count(d);
  if (d <= 4) {
    const ExactRational mu = minimum_norm(l);
    const VectorSet mv = certified_short_vectors(l, mu);
    rep.kv("MU", to_string(mu));
    rep.kv("MU_METHOD", "exhaustive");
    rep.kv("COUNT", mv.size());
    rep.check(mu == mu_expected, "min_norm", to_string(mu_expected), to_string(mu));
    rep.check(Integer(static_cast<unsigned long>(mv.size())) == count_expected, "minimal_vector_count",
              to_string(count_expected), std::to_string(mv.size()));
    if (d >= 2) {
      const VectorSet st = minimal_vectors_structural(*bw, 0);
      const bool same = st.same_set(mv.rescaled(st.denom_exp()));
      rep.kv("STRUCTURAL_MATCHES_EXHAUSTIVE", yes_no(same));
      rep.check(same, "structural_stream", "structural set equals exhaustive set", "sets differ");
    }
  } else {
    const StreamReport s = verify_structural_stream(*bw, 0);
    rep.kv("MU", to_string(s.norm));
    rep.kv("MU_METHOD", "structural");
    rep.kv("COUNT", s.count);
    rep.check(s.norm == mu_expected, "min_norm", to_string(mu_expected), to_string(s.norm));
    rep.check(Integer(static_cast<unsigned long>(s.count)) == count_expected, "minimal_vector_count",
              to_string(count_expected), std::to_string(s.count));
    const bool clean = s.wrong_norm == 0 && s.outside_lattice == 0 && s.duplicates == 0;
    rep.check(clean, "structural_stream", "0 wrong norm, 0 outside, 0 duplicates",
              std::to_string(s.wrong_norm) + " wrong norm, " + std::to_string(s.outside_lattice) + " outside, " +
                  std::to_string(s.duplicates) + " duplicates");
  }

  if (suite == "full" && d >= 2) {
    for (int q : {-1, 1}) {
      const StreamReport s = verify_structural_stream(*bw, q);
      const bool clean = s.wrong_norm == 0 && s.outside_lattice == 0 && s.duplicates == 0 &&
                         Integer(static_cast<unsigned long>(s.count)) == count_expected;
      rep.kv("TWIST_STREAM_" + std::string(q < 0 ? "M1" : "P1"),
             std::to_string(s.count) + " vectors of norm " + to_string(s.norm));
      rep.check(clean, "structural_stream", to_string(count_expected) + " clean vectors",
                std::to_string(s.count) + " vectors, " + std::to_string(s.wrong_norm + s.outside_lattice + s.duplicates) +
                    " bad");
    }
    if (d <= 5) {
      const GenerationChecks g = generation_checks(*bw);
      rep.kv("THREE_QUARTER_GENERATION", yes_no(g.three_quarter));
      rep.kv("TWO_QUARTER_GENERATION", yes_no(g.two_quarter));
      rep.kv("COMMUTATOR_DENSE", yes_no(g.commutator_dense));
      rep.check(g.three_quarter, "three_quarter_generation", "yes", "no");
      rep.check(g.two_quarter, "two_quarter_generation", "yes", "no");
      rep.check(g.commutator_dense, "commutator_density", "yes", "no");
    }
    if (d <= 4) {
      const LowerGroupReport lg = lower_group_closure(*bw);
      const std::size_t want = std::size_t{1} << (1 + 2 * d);
      rep.kv("LOWER_GROUP_ORDER", lg.order);
      rep.kv("LOWER_GROUP_TRIVIAL_ON_QUOTIENT", yes_no(lg.trivial_on_quotient));
      rep.check(lg.order == want && lg.trivial_on_quotient, "lower_group_order",
                std::to_string(want) + ", trivial on L/L[1]",
                std::to_string(lg.order) + (lg.trivial_on_quotient ? ", trivial" : ", nontrivial") + " on L/L[1]");
    }
    if (d >= 3 && d <= 4) {
      for (int p = -1; p <= 1; ++p)
        for (int q = -1; q <= 1; ++q) {
          const DotExponentReport got = realized_dot_exponents(*bw, p, q);
          const ExponentInterval want = exponent_interval(d, p, q);
          const bool ok = got.zero_realized && got.all_powers_of_two && got.exponents == want.values;
          rep.kv("DOT_EXPONENTS_" + std::to_string(p) + "_" + std::to_string(q), join(got.exponents));
          rep.check(ok, "exponent_interval", join(want.values), join(got.exponents));
        }
    }
  }
  return rep.finish();
}

int cmd_minvec(int d, bool count_only, int q, const std::string& path, std::ostream& out) {
  check_level(d);
  if (d < 2) throw UsageError("structural enumeration needs -d >= 2");
  BWPtr bw = build_bw(d);
  const Labeling lab = compute_labeling(*bw);
  if (count_only) {
    std::uint64_t count = 0;
    for_each_minimal_vector(*bw, lab, q, [&](std::span<const std::int64_t>) { ++count; });
    out << count << '\n';
    return kOk;
  }
  emit(path, out, [&](std::ostream& os) {
    os << "mv " << to_string(minimal_vector_count(d)) << ' ' << structural_denom_exp(d, q) << '\n';
    for_each_minimal_vector(*bw, lab, q, [&](std::span<const std::int64_t> v) {
      for (std::size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << v[j];
      os << '\n';
    });
  });
  return kOk;
}

int cmd_frames(const std::string& which, std::ostream& out) {
  if (which != "e8-orbits") throw UsageError("unknown frame family '" + which + "'; expected e8-orbits");
  Report rep(out);
  const E8FrameReport r = e8_frame_orbits();
  std::set<int> invariants;
  bool all_frames = true;
  for (const auto& f : r.frames) {
    rep.kv("FRAME", f.name + " is_frame=" + yes_no(f.is_frame) + " d_invariant=" + std::to_string(f.d_invariant));
    invariants.insert(f.d_invariant);
    all_frames = all_frames && f.is_frame;
  }
  rep.kv("ORBITS", r.frames.size());
  const std::set<int> want = {1, 2, 3, 4};
  rep.check(all_frames && invariants == want && r.frames.size() == 4, "e8_frame_orbits", join(want),
            join(invariants) + (all_frames ? "" : " (not all frames)"));
  return rep.finish();
}

int cmd_codes(const std::string& family, int r, const std::string& path, std::ostream& out) {
  BinaryCode c;
  if (family == "hamming") c = hamming(r);
  else if (family == "extended") c = extended_hamming(r);
  else if (family == "simplex") c = simplex(r);
  else if (family == "affine2") c = code_from_affine_codim2(r);
  else if (family == "doublyeven") c = indecomposable_doubly_even(r);
  else throw UsageError("unknown code family '" + family + "'");
  const CodeProperties p = code_properties(c);
  Report rep(out);
  rep.kv("CODE", family + " r=" + std::to_string(r));
  rep.kv("LENGTH", c.length());
  rep.kv("DIMENSION", c.dimension());
  rep.kv("MIN_WEIGHT", p.min_weight ? std::to_string(*p.min_weight) : "none");
  rep.kv("DOUBLY_EVEN", yes_no(p.is_doubly_even));
  rep.kv("SELF_ORTHOGONAL", yes_no(p.is_self_orthogonal));
  rep.kv("INDECOMPOSABLE", yes_no(p.is_indecomposable));
  if (c.dimension() <= 24) {
    const auto wd = weight_distribution(c);
    std::string s;
    for (std::size_t w = 0; w < wd.size(); ++w)
      if (wd[w]) s += (s.empty() ? "" : " ") + std::to_string(w) + ":" + std::to_string(wd[w]);
    rep.kv("WEIGHTS", s);
  }
  if (family == "doublyeven") {
    const bool ok = p.is_doubly_even && p.is_self_orthogonal && p.is_indecomposable;
    rep.check(ok, "code_admissible", "doubly even, self-orthogonal, indecomposable", "admissibility fails");
  }
  if (!path.empty()) {
    emit(path, out, [&](std::ostream& os) { write_code(os, c); });
    rep.kv("OUTPUT", path);
  }
  return rep.finish();
}

IntMatrix block_diag_copies(const IntMatrix& a, std::size_t copies) {
  IntMatrix m(a.rows() * copies, a.cols() * copies);
  for (std::size_t c = 0; c < copies; ++c) m.set_block(c * a.rows(), c * a.cols(), a);
  return m;
}

int cmd_washtenawize(const std::string& base, int degree, const std::string& path, std::ostream& out) {
  if (base.size() < 3 || base.compare(0, 2, "bw") != 0) throw UsageError("--base must look like bw<e>");
  int e = 0;
  try {
    std::size_t used = 0;
    e = std::stoi(base.substr(2), &used);
    if (used != base.size() - 2) throw std::invalid_argument(base);
  } catch (const std::logic_error&) {
    throw UsageError("--base must look like bw<e>");
  }
  if (e < 2) throw UsageError("--base needs e >= 2");
  if (degree < 3) throw UsageError("--degree must be at least 3");

  const TwoSpecialLattice m = two_special_from_bw(e);
  const BinaryCode code = indecomposable_doubly_even(degree);
  const TwoSpecialLattice w = washtenawize(m, code);
  const int r = m.duality_level;

  Report rep(out);
  rep.kv("BASE", m.description);
  rep.kv("DEGREE", degree);
  rep.kv("CODE_LENGTH", code.length());
  rep.kv("RANK", w.rank());

  const auto level = is_two_special(w.lattice, w.p);
  rep.kv("DUALITY_LEVEL", level ? std::to_string(*level) : "none");
  rep.check(level && *level == 1 - r, "washtenaw_level", std::to_string(1 - r),
            level ? std::to_string(*level) : "not 2-special");

  const ScaledLattice lower = special_twist(m.lattice, m.p, 1 - r);
  const ScaledLattice glued_base(block_diag_copies(lower.basis(), static_cast<std::size_t>(code.length())),
                                 lower.denom_exp());
  const Integer index = lattice_index(glued_base, w.lattice);
  const Integer want_index = Integer(1) << ((std::size_t{1} << (degree - 2)) * m.rank());
  const std::string index_exp = std::to_string(mpz_sizeinbase(index.get_mpz_t(), 2) - 1);
  const std::string want_exp = std::to_string((std::size_t{1} << (degree - 2)) * m.rank());
  rep.kv("GLUE_INDEX", "2^" + index_exp);
  rep.check(index == want_index, "washtenaw_index", "2^" + want_exp, to_string(index));

  rep.kv("DETERMINANT", to_string(lattice_determinant(w.lattice)));
  rep.kv("EVEN", yes_no(w.lattice.is_even()));
  rep.kv("MIN_NORM", to_string(w.min_norm));

  const WashtenawData base_data = washtenaw_data(m);
  const WashtenawData data = washtenaw_data(w);
  rep.kv("MVD", data.mvd);
  rep.kv("WASHTENAW_RATIO", to_string(data.washtenaw_ratio));
  const ExactRational want_ratio = base_data.washtenaw_ratio / 2;
  rep.check(data.washtenaw_ratio == want_ratio, "washtenaw_ratio", to_string(want_ratio),
            to_string(data.washtenaw_ratio));
  if (!path.empty()) {
    emit(path, out, [&](std::ostream& os) { write_lattice(os, w.lattice); });
    rep.kv("OUTPUT", path);
  }
  return rep.finish();
}

int cmd_ypsilanti(int rank, std::uint64_t seed, bool negative_control, const std::string& path, std::ostream& out) {
  if (rank != 128) throw UsageError("only the rank-128 desk-scale analogue is available (--rank 128)");
  Report rep(out);
  rep.kv("GENERATOR", "mt19937_64");
  rep.kv("SEED", seed);
  rep.kv("RANK", rank);
  rep.kv("MODE", negative_control ? "negative-control" : "avoiding");
  const YpsilantiCertificate c = ypsilanti_desk_analogue(seed, negative_control);
  rep.kv("ATTEMPTS", c.zeta.attempts);
  rep.kv("AVOIDING", yes_no(c.zeta.avoiding));
  rep.kv("EVEN", yes_no(c.result.even));
  rep.kv("DETERMINANT", to_string(c.result.determinant));
  rep.kv("INTERSECTIONS", yes_no(c.result.intersections_ok));
  rep.kv("PROJECTIONS", yes_no(c.result.projections_ok));
  rep.kv("SEPARATED", yes_no(c.separation.separated));
  const bool unimodular = c.result.even && c.result.determinant == 1;
  rep.check(unimodular, "ypsilanti_even_unimodular", "even, determinant 1",
            std::string(c.result.even ? "even" : "odd") + ", determinant " + to_string(c.result.determinant));
  if (negative_control) {
    if (c.separation.cross_vector) rep.kv("CROSS_NORM", to_string(c.separation.cross_norm));
    rep.check(!c.separation.separated && c.separation.cross_vector.has_value(), "ypsilanti_negative_control",
              "a cross minimal vector", "none found");
  } else {
    rep.check(c.separation.separated, "ypsilanti_separation", "separated", "cross minimal vector found");
  }
  if (!path.empty()) {
    emit(path, out, [&](std::ostream& os) { write_certificate(os, c); });
    rep.kv("OUTPUT", path);
  }
  return rep.finish();
}

int cmd_mass(int n, bool table, std::ostream& out) {
  if (table == (n != 0)) throw UsageError("give exactly one of -n or --table");
  if (table) {
    for (const auto& row : asymptotics_table(10)) out << format_row(row) << '\n';
    return kOk;
  }
  out << to_string(mass(n).value) << '\n';
  return kOk;
}

int cmd_survey(int b, int a, bool gl, std::ostream& out) {
  if (a < 1 || a > b) throw UsageError("need 1 <= a <= b");
  const SurveyReport s = avoiding_maps_survey(b, a, gl);
  Report rep(out);
  rep.kv("B", b);
  rep.kv("A", a);
  rep.kv("GROUP", gl ? "GL" : "O+");
  rep.kv("GROUP_ORDER", s.group_order);
  rep.kv("STABILIZER_ORDER", s.stabilizer_order);
  std::set<int> ks;
  bool divisible = true;
  for (const auto& c : s.classes) {
    std::string line = "k=" + std::to_string(c.k) + " size=" + std::to_string(c.size) +
                       " divisible=" + yes_no(c.divisible_by_h) + " one_sided_orbits=" +
                       std::to_string(c.one_sided_orbits) + " regular=" + yes_no(c.one_sided_regular);
    if (!gl) line += " two_sided_orbits=" + std::to_string(c.two_sided_orbits);
    rep.kv("CLASS", line);
    ks.insert(c.k);
    divisible = divisible && c.divisible_by_h;
  }
  std::set<int> want;
  for (int k = 0; k <= std::min(a, b - a); ++k) want.insert(k);
  rep.kv("K_RANGE", join(ks));
  rep.check(ks == want, "survey_k_range", join(want), join(ks));
  rep.check(divisible, "survey_divisibility", "all divisible", "some class not divisible by |H|");
  return rep.finish();
}

bool is_usage_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidParameter:
    case ErrorKind::InvalidDimension:
    case ErrorKind::OutOfRange:
    case ErrorKind::TooLarge:
    case ErrorKind::ResourceCap:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Barnes-Wall lattices, Washtenawization and Ypsilanti gluing", "bw"};
  app.require_subcommand(1);

  std::function<int()> action;
  int d = 0, q = 0, r = 0, degree = 0, rank = 0, n = 0, b = 0, a = 0;
  std::uint64_t seed = 0;
  std::string path, suite = "quick", family, base, which;
  bool no_gram = false, count_only = false, negative_control = false, table = false, gl = false;

  auto* build = app.add_subcommand("build", "Construct BW_d and write its lattice file");
  build->add_option("-d", d, "Level d (rank 2^d)")->required();
  build->add_option("-o,--output", path, "Output path (stdout when omitted)");
  build->add_flag("--no-gram", no_gram, "Omit the gram cross-check block");
  build->callback([&] { action = [&] { return cmd_build(d, path, no_gram, out); }; });

  auto* verify = app.add_subcommand("verify", "Verify the invariants of BW_d");
  verify->add_option("-d", d, "Level d")->required();
  verify->add_option("--suite", suite, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify->callback([&] { action = [&] { return cmd_verify(d, suite, out); }; });

  auto* minvec = app.add_subcommand("minvec", "Enumerate minimal vectors of BW_d[q]");
  minvec->add_option("-d", d, "Level d")->required();
  minvec->add_option("-q", q, "Twist level");
  minvec->add_flag("--count-only", count_only, "Print only the number of vectors");
  minvec->add_option("-o,--output", path, "Output path (stdout when omitted)");
  minvec->callback([&] { action = [&] { return cmd_minvec(d, count_only, q, path, out); }; });

  auto* frames = app.add_subcommand("frames", "Frame orbit representatives");
  frames->add_option("family", which, "e8-orbits")->required();
  frames->callback([&] { action = [&] { return cmd_frames(which, out); }; });

  auto* codes = app.add_subcommand("codes", "Binary code families");
  codes->add_option("family", family, "hamming, extended, simplex, affine2 or doublyeven")
      ->required()
      ->check(CLI::IsMember({"hamming", "extended", "simplex", "affine2", "doublyeven"}));
  codes->add_option("-r", r, "Family parameter")->required();
  codes->add_option("-o,--output", path, "Write the code file here");
  codes->callback([&] { action = [&] { return cmd_codes(family, r, path, out); }; });

  auto* wash = app.add_subcommand("washtenawize", "Washtenawize BW_e along a doubly even code of length 2^t");
  wash->add_option("--base", base, "Base lattice bw<e>")->required();
  wash->add_option("--degree", degree, "Code length exponent t")->required();
  wash->add_option("-o,--output", path, "Write the lattice file here");
  wash->callback([&] { action = [&] { return cmd_washtenawize(base, degree, path, out); }; });

  auto* yps = app.add_subcommand("ypsilanti", "Glue two Washtenawized lattices by a sampled avoiding map");
  yps->add_option("--rank", rank, "Rank of the glued lattice")->required();
  yps->add_option("--seed", seed, "Seed of the generator");
  yps->add_flag("--negative-control", negative_control, "Glue by the identity, which is not avoiding");
  yps->add_option("-o,--output", path, "Write the certificate here");
  yps->callback([&] { action = [&] { return cmd_ypsilanti(rank, seed, negative_control, path, out); }; });

  auto* mass_cmd = app.add_subcommand("mass", "Mass of even unimodular lattices, or the asymptotics table");
  auto* n_opt = mass_cmd->add_option("-n", n, "Rank, a multiple of 8");
  auto* table_opt = mass_cmd->add_flag("--table", table, "Print the asymptotics table");
  n_opt->excludes(table_opt);
  mass_cmd->callback([&] { action = [&] { return cmd_mass(n, table, out); }; });

  auto* survey = app.add_subcommand("survey-avoiding", "Exhaustive survey of avoiding maps");
  survey->add_option("-b", b, "Half dimension of the quadratic space")->required();
  survey->add_option("-a", a, "Dimension of W1 = W2")->required();
  survey->add_flag("--gl", gl, "Survey all linear isomorphisms instead of isometries");
  survey->callback([&] { action = [&] { return cmd_survey(b, a, gl, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_usage_kind(e.kind()) ? kUsage : kFailed;
  }
}

}  // namespace bwlat::cli

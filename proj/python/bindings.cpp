#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "bwlat/asymptotics.hpp"
#include "bwlat/washtenaw_ypsilanti.hpp"

namespace py = pybind11;
using namespace bwlat;

namespace {

// Big integers cross the boundary as decimal strings; the Python package converts them.
std::vector<std::vector<std::string>> matrix_strings(const IntMatrix& m) {
  std::vector<std::vector<std::string>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i].push_back(to_string(m(i, j)));
  return rows;
}

py::dict lattice_dict(const ScaledLattice& l) {
  py::dict d;
  d["rank"] = l.rank();
  d["ambient_dim"] = l.ambient_dim();
  d["denom_exp"] = l.denom_exp();
  d["basis"] = matrix_strings(l.basis());
  d["determinant"] = to_string(lattice_determinant(l));
  d["even"] = l.is_even();
  return d;
}

BinaryCode code_family(const std::string& family, int r) {
  if (family == "hamming") return hamming(r);
  if (family == "extended") return extended_hamming(r);
  if (family == "simplex") return simplex(r);
  if (family == "affine2") return code_from_affine_codim2(r);
  if (family == "doublyeven") return indecomposable_doubly_even(r);
  throw Error(ErrorKind::InvalidParameter, "unknown code family '" + family + "'");
}

}  // namespace

PYBIND11_MODULE(_bwlat, m) {
  static py::exception<Error> error_type(m, "Error", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object err = py::handle(error_type)(e.what());
      err.attr("kind") = to_string(e.kind());
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  m.def("build_bw", [](int d) {
    BWPtr bw = build_bw(d);
    py::dict out = lattice_dict(bw->lattice);
    out["d"] = d;
    out["duality_level"] = bw->duality_level;
    out["min_norm"] = bw->min_norm();
    return out;
  }, py::arg("d"));

  m.def("minimal_vector_count", [](int d) { return to_string(minimal_vector_count(d)); }, py::arg("d"));

  m.def("minimal_vectors", [](int d, int q) {
    BWPtr bw = build_bw(d);
    VectorSet vs = minimal_vectors_structural(*bw, q);
    std::vector<std::vector<std::int64_t>> rows;
    rows.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) rows.emplace_back(vs[i].begin(), vs[i].end());
    return py::make_tuple(rows, vs.denom_exp());
  }, py::arg("d"), py::arg("q") = 0);

  m.def("verify_stream", [](int d, int q) {
    StreamReport r = verify_structural_stream(*build_bw(d), q);
    py::dict out;
    out["count"] = r.count;
    out["wrong_norm"] = r.wrong_norm;
    out["outside_lattice"] = r.outside_lattice;
    out["duplicates"] = r.duplicates;
    out["norm"] = to_string(r.norm);
    return out;
  }, py::arg("d"), py::arg("q") = 0);

  m.def("discriminant_invariants", [](int d) {
    std::vector<std::string> out;
    for (const auto& x : discriminant_invariants(build_bw(d)->lattice).nontrivial()) out.push_back(to_string(x));
    return out;
  }, py::arg("d"));

  m.def("exponent_interval", [](int d, int p, int q) { return exponent_interval(d, p, q).values; },
        py::arg("d"), py::arg("p"), py::arg("q"));

  m.def("e8_frame_invariants", [] {
    std::vector<int> out;
    for (const auto& f : e8_frame_orbits().frames) out.push_back(f.d_invariant);
    return out;
  });

  m.def("code_properties", [](const std::string& family, int r) {
    BinaryCode c = code_family(family, r);
    CodeProperties p = code_properties(c);
    py::dict out;
    out["length"] = c.length();
    out["dimension"] = c.dimension();
    out["min_weight"] = p.min_weight ? py::cast(*p.min_weight) : py::none();
    out["doubly_even"] = p.is_doubly_even;
    out["self_orthogonal"] = p.is_self_orthogonal;
    out["indecomposable"] = p.is_indecomposable;
    return out;
  }, py::arg("family"), py::arg("r"));

  m.def("washtenawize_bw", [](int e, int degree) {
    TwoSpecialLattice w = washtenawize(two_special_from_bw(e), indecomposable_doubly_even(degree));
    WashtenawData data = washtenaw_data(w);
    py::dict out = lattice_dict(w.lattice);
    out["duality_level"] = w.duality_level;
    out["min_norm"] = to_string(w.min_norm);
    out["mvd"] = data.mvd;
    out["washtenaw_ratio"] = to_string(data.washtenaw_ratio);
    out["description"] = w.description;
    return out;
  }, py::arg("e"), py::arg("degree"));

  m.def("ypsilanti", [](std::uint64_t seed, bool negative_control) {
    YpsilantiCertificate c = ypsilanti_desk_analogue(seed, negative_control);
    std::ostringstream cert;
    write_certificate(cert, c);
    py::dict out;
    out["seed"] = seed;
    out["attempts"] = c.zeta.attempts;
    out["even"] = c.result.even;
    out["determinant"] = to_string(c.result.determinant);
    out["separated"] = c.separation.separated;
    out["cross_norm"] = c.separation.cross_vector ? py::cast(to_string(c.separation.cross_norm)) : py::none();
    out["certificate"] = cert.str();
    return out;
  }, py::arg("seed") = 0, py::arg("negative_control") = false);

  m.def("verify_certificate", [](const std::string& text) {
    std::istringstream in(text);
    read_and_verify_certificate(in);
    return true;
  }, py::arg("text"));

  m.def("survey_avoiding", [](int b, int a, bool gl) {
    SurveyReport s = avoiding_maps_survey(b, a, gl);
    py::dict out;
    out["group_order"] = s.group_order;
    out["stabilizer_order"] = s.stabilizer_order;
    py::list classes;
    for (const auto& c : s.classes) {
      py::dict k;
      k["k"] = c.k;
      k["size"] = c.size;
      k["one_sided_orbits"] = c.one_sided_orbits;
      k["two_sided_orbits"] = c.two_sided_orbits;
      classes.append(k);
    }
    out["classes"] = classes;
    return out;
  }, py::arg("b"), py::arg("a"), py::arg("gl") = false);

  m.def("mass", [](int n) { return to_string(mass(n).value); }, py::arg("n"));
  m.def("bernoulli", [](int j) { return to_string(bernoulli(j)); }, py::arg("j"));
  m.def("asymptotics_table", [](int rows) {
    std::vector<std::string> out;
    for (const auto& r : asymptotics_table(rows)) out.push_back(format_row(r));
    return out;
  }, py::arg("rows") = 10);
  m.def("omega_plus_order", [](int n, long q) { return to_string(omega_plus_order(n, q)); }, py::arg("n"),
        py::arg("q"));
  m.def("minkowski_bound", [](int n) { return to_string(minkowski_bound(n)); }, py::arg("n"));
}

#include <istream>
#include <ostream>
#include <string>

#include "bwlat/lattice_core.hpp"

namespace bwlat {

void write_lattice(std::ostream& os, const ScaledLattice& l, bool with_gram) {
  os << "lattice " << l.rank() << ' ' << l.ambient_dim() << ' ' << l.denom_exp() << '\n';
  for (std::size_t i = 0; i < l.rank(); ++i) {
    for (std::size_t j = 0; j < l.ambient_dim(); ++j) os << (j ? " " : "") << l.basis()(i, j);
    os << '\n';
  }
  if (!with_gram) return;
  auto g = l.integral_gram();
  if (!g) return;
  os << "gram\n";
  for (std::size_t i = 0; i < g->rows(); ++i) {
    for (std::size_t j = 0; j < g->cols(); ++j) os << (j ? " " : "") << (*g)(i, j);
    os << '\n';
  }
}

namespace {

Integer read_integer(std::istream& is, const char* what) {
  std::string tok;
  if (!(is >> tok)) throw Error(ErrorKind::Parse, std::string("unexpected end of input reading ") + what);
  Integer v;
  if (v.set_str(tok, 10) != 0) throw Error(ErrorKind::Parse, "not an integer: '" + tok + "'");
  return v;
}

}  // namespace

ScaledLattice read_lattice(std::istream& is) {
  std::string tag;
  long n = -1, N = -1, e = -1;
  if (!(is >> tag >> n >> N >> e) || tag != "lattice" || n < 0 || N < 0 || e < 0)
    throw Error(ErrorKind::Parse, "expected header 'lattice <rank> <ambient_dim> <denom_exp>'");
  if (n > N) throw Error(ErrorKind::Parse, "rank exceeds ambient dimension");
  IntMatrix b(n, N);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < N; ++j) b(i, j) = read_integer(is, "basis row");
  if (rational_rank(b) != static_cast<std::size_t>(n)) throw Error(ErrorKind::Parse, "basis rows are linearly dependent");
  ScaledLattice l(b, static_cast<int>(e));
  is >> std::ws;
  if (is.peek() == 'g') {
    is >> tag;
    if (tag != "gram") throw Error(ErrorKind::Parse, "unexpected token '" + tag + "'");
    IntMatrix g(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j) g(i, j) = read_integer(is, "gram row");
    auto actual = l.integral_gram();
    if (!actual || !(*actual == g)) throw Error(ErrorKind::Parse, "gram block does not match the basis");
  }
  return l;
}

void write_vectors(std::ostream& os, const VectorSet& vs) {
  os << "mv " << vs.size() << ' ' << vs.denom_exp() << '\n';
  for (std::size_t i = 0; i < vs.size(); ++i) {
    auto v = vs[i];
    for (std::size_t j = 0; j < v.size(); ++j) os << (j ? " " : "") << v[j];
    os << '\n';
  }
}

}  // namespace bwlat

#include "bwlat/asymptotics.hpp"

#include <mutex>

#include "bwlat/error.hpp"

namespace bwlat {

namespace {

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

const std::vector<ExactRational>& bernoulli_table() {
  static std::once_flag once;
  static std::vector<ExactRational> table;
  // sum_{k=0}^{m} C(m+1, k) B_k = 0
  std::call_once(once, [] {
    constexpr int max_index = 400;
    table.resize(max_index + 1);
    table[0] = 1;
    for (int m = 1; m <= max_index; ++m) {
      ExactRational s = 0;
      for (int k = 0; k < m; ++k) s += ExactRational(binomial(m + 1, k)) * table[k];
      table[m] = -s / ExactRational(m + 1);
      table[m].canonicalize();
    }
  });
  return table;
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

ExactRational pow10(int e) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(e)));
  return e >= 0 ? ExactRational(p) : ExactRational(1, p);
}

}  // namespace

ExactRational bernoulli_classical(int n) {
  if (n < 0 || n > 400) throw Error(ErrorKind::OutOfRange, "Bernoulli index must be in 0..400");
  return bernoulli_table()[n];
}

ExactRational bernoulli(int j) {
  if (j < 1 || j > 200) throw Error(ErrorKind::OutOfRange, "Bernoulli index must be in 1..200");
  return abs(bernoulli_classical(2 * j));
}

MassValue mass(int n) {
  if (n <= 0 || n % 8 != 0 || n > 256) throw Error(ErrorKind::InvalidDimension, "mass needs n a positive multiple of 8, n <= 256");
  const int k = n / 8;
  ExactRational v = bernoulli(2 * k) / ExactRational(8 * k);
  for (int j = 1; j <= 4 * k - 1; ++j) v *= bernoulli(j) / ExactRational(4 * j);
  v.canonicalize();
  return {n, v};
}

std::string to_string(const DominantTerm& t, const std::string& var) {
  std::string s = to_string(t.a0);
  if (t.a1) s += " * log2(" + var + ")" + (t.a1 == 1 ? "" : "^" + std::to_string(t.a1));
  if (t.a2) s += " * 2^(" + (t.a2 == 1 ? "" : std::to_string(t.a2)) + var + ")";
  if (t.a3) s += " * " + var + (t.a3 == 1 ? "" : "^" + std::to_string(t.a3));
  return s;
}

ExactRational upsilon(const ExactRational& q) {
  if (q <= 0 || q > ExactRational(1, 2)) throw Error(ErrorKind::OutOfRange, "upsilon needs q in (0, 1/2]");
  ExactRational v = 2 - 2 * q + ExactRational(3, 2) * q * q;
  v.canonicalize();
  return v;
}

DominantTerm dtl_mass() { return {ExactRational(1, 4), 1, 0, 2}; }

DominantTerm dtl_upsilon_lower(int j) {
  if (j < 1) throw Error(ErrorKind::OutOfRange, "series index j must be positive");
  ExactRational q(1, Integer(1) << j);
  ExactRational a0 = upsilon(q) / 16;
  a0.canonicalize();
  return {a0, 0, 2, 1};
}

ExactRational dtl_ratio(int j) {
  // log2(n) n^2 at n = 2^d is d 2^(2d), so the forms agree and the ratio is a0 / a0
  ExactRational r = dtl_upsilon_lower(j).a0 / dtl_mass().a0;
  r.canonicalize();
  return r;
}

std::vector<AsymptoticsRow> asymptotics_table(int rows) {
  std::vector<AsymptoticsRow> out;
  for (int j = 1; j <= rows; ++j) {
    ExactRational q(1, Integer(1) << j);
    out.push_back({j, q, upsilon(q), dtl_ratio(j)});
  }
  return out;
}

std::string format_significant(const ExactRational& value, int digits) {
  if (value <= 0) throw Error(ErrorKind::OutOfRange, "only positive values are rendered");
  // 10^(k-1) <= value < 10^k
  int k = 0;
  while (value >= pow10(k)) ++k;
  while (value < pow10(k - 1)) --k;
  auto scaled_digits = [&](int kk) {
    ExactRational x = value * pow10(digits - kk) + ExactRational(1, 2);
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
  };
  Integer r = scaled_digits(k);
  std::string s = r.get_str();
  if (static_cast<int>(s.size()) > digits) {
    ++k;
    s = scaled_digits(k).get_str();
  }
  if (k <= 0) return "." + std::string(-k, '0') + s;
  if (k < digits) return s.substr(0, k) + "." + s.substr(k);
  return s + std::string(k - digits, '0');
}

std::string format_row(const AsymptoticsRow& row) {
  return std::to_string(row.j) + " " + format_significant(row.q) + " " + format_significant(row.upsilon) + " " +
         format_significant(row.ratio);
}

Integer minkowski_bound(int n) {
  if (n < 1 || n > 512) throw Error(ErrorKind::OutOfRange, "Minkowski bound needs 1 <= n <= 512");
  Integer f = 1;
  for (long q = 2; q <= n + 1; ++q) {
    if (!is_prime(q)) continue;
    long a = 0;
    for (long qi = 1; qi * (q - 1) <= n; qi *= q) a += n / (qi * (q - 1));
    Integer pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(a));
    f *= pw;
  }
  return f;
}

Integer omega_plus_order(int n, long q) {
  if (n < 1) throw Error(ErrorKind::InvalidParameter, "omega_plus_order needs n >= 1");
  long p = 2;
  while (p <= q && q % p != 0) ++p;
  long rest = q;
  while (rest % p == 0) rest /= p;
  if (q < 2 || rest != 1) throw Error(ErrorKind::InvalidParameter, "q must be a prime power");
  auto pow = [&](long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(e));
    return r;
  };
  Integer order = pow(static_cast<long>(n) * (n - 1)) * (pow(n) - 1);
  for (int i = 1; i < n; ++i) order *= pow(2L * i) - 1;
  return order;
}

}  // namespace bwlat

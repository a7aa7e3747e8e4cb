#include "lparity/claims.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lparity/errors.hpp"
#include "lparity/spectrum.hpp"

namespace lparity {

namespace {

using nlohmann::json;

struct Verdict {
  Outcome outcome = Outcome::pass;
  json witness = json::object();
  std::string note;
};

Verdict na(std::string why) { return {Outcome::not_applicable, json::object(), std::move(why)}; }
Verdict judge(bool ok, json witness) { return {ok ? Outcome::pass : Outcome::fail, std::move(witness), {}}; }

int md(const BigInt& x, int m) { return static_cast<int>(mod_u64(x, static_cast<std::uint64_t>(m))); }
int md(std::int64_t x, int m) { return static_cast<int>(mod_i64(x, m)); }
int md(std::uint64_t x, int m) { return static_cast<int>(x % static_cast<std::uint64_t>(m)); }

json big(const BigInt& v) { return to_json(v); }

// Quantities of one square (or row-Latin square), computed on first use.
class SquareProfile {
 public:
  SquareProfile(const SymbolGrid& g, const LatinSquare* latin) : grid_(g), latin_(latin), n_(g.rows()) {}

  int n() const { return n_; }
  const SymbolGrid& grid() const { return grid_; }
  const LatinSquare& latin() const { return *latin_; }

  std::uint64_t En() {
    if (!en_) en_ = count_transversals(grid_);
    return *en_;
  }
  std::int64_t signed_count_of(const Conjugacy& g) {
    const std::string key = g.str();
    auto it = signed_cache_.find(key);
    if (it == signed_cache_.end()) it = signed_cache_.emplace(key, signed_count(conjugate(latin(), g))).first;
    return it->second;
  }
  std::int64_t signed_total() { return signed_count_of(Conjugacy{}); }
  const ParityTypeCounts& types() {
    if (!types_) types_ = parity_type_counts(latin());
    return *types_;
  }
  const SquareParities& parities() {
    if (!parities_) parities_ = square_parities(latin());
    return *parities_;
  }
  const RSequence& R() {
    if (!r_) r_ = r_sequence(latin(), PermanentMode::per);
    return *r_;
  }
  const RSequence& Rev() {
    if (!rev_) rev_ = r_sequence(latin(), PermanentMode::even_per);
    return *rev_;
  }
  // Enumeration for small orders, inclusion-exclusion from R beyond.
  const DiagonalSpectrum& E() {
    if (!e_) e_ = n_ <= kCensusOrder ? census().plain : spectrum_from_r(R());
    return *e_;
  }
  const DiagonalSpectrum& Eev() {
    if (!eev_) eev_ = n_ <= kCensusOrder ? census().even : spectrum_from_r(Rev());
    return *eev_;
  }
  /// N_r by direct enumeration; guarded.
  const std::vector<std::uint64_t>& N_enumerated() { return census().N; }
  /// Enumerated where affordable, else from the row-sum identity.
  std::vector<std::uint64_t> N(std::string* method) {
    if (n_ <= kSpectrumMaxOrder) {
      if (method) *method = "enumerate";
      return N_enumerated();
    }
    if (method) *method = "identity";
    return n_from_identity(t(), En());
  }
  const std::vector<std::vector<std::uint64_t>>& t() {
    if (!t_) {
      std::vector<std::vector<std::uint64_t>> t(n_, std::vector<std::uint64_t>(n_));
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) t[i][j] = count_transversals(grid_.without(i, j));
      t_ = std::move(t);
    }
    return *t_;
  }

 private:
  static constexpr int kCensusOrder = 9;

  const DiagonalCensus& census() {
    if (!census_) census_ = diagonal_census(latin());
    return *census_;
  }

  const SymbolGrid& grid_;
  const LatinSquare* latin_;
  int n_;
  std::optional<std::uint64_t> en_;
  std::map<std::string, std::int64_t> signed_cache_;
  std::optional<ParityTypeCounts> types_;
  std::optional<SquareParities> parities_;
  std::optional<RSequence> r_, rev_;
  std::optional<DiagonalSpectrum> e_, eev_;
  std::optional<DiagonalCensus> census_;
  std::optional<std::vector<std::vector<std::uint64_t>>> t_;
};

class MatrixProfile {
 public:
  explicit MatrixProfile(const IntMatrix& a) : a_(a) {}

  const IntMatrix& A() const { return a_; }
  int n() const { return a_.rows(); }
  bool square() const { return a_.square(); }
  const BigInt& per() {
    if (!per_) per_ = permanent(a_);
    return *per_;
  }
  const BigInt& det() {
    if (!det_) det_ = determinant(a_);
    return *det_;
  }
  std::optional<int> degree() {
    if (!degree_) degree_ = regular_degree(a_);
    return *degree_;
  }
  const IntMatrix& complement() {
    if (!comp_) comp_ = IntMatrix::ones(n(), n()) - a_;
    return *comp_;
  }
  const std::vector<BigInt>& minors() {
    if (!minors_) {
      std::vector<BigInt> m;
      for (int i = 0; i < n(); ++i)
        for (int j = 0; j < n(); ++j) m.push_back(permanental_minor(a_, i, j));
      minors_ = std::move(m);
    }
    return *minors_;
  }
  const BigInt& minor(int i, int j) { return minors()[static_cast<std::size_t>(i) * n() + j]; }
  bool row_sums_even() {
    for (const auto& s : a_.row_sums())
      if (!is_even(s)) return false;
    return true;
  }
  bool column_sums_even() {
    for (const auto& s : a_.column_sums())
      if (!is_even(s)) return false;
    return true;
  }

 private:
  const IntMatrix& a_;
  std::optional<BigInt> per_, det_;
  std::optional<std::optional<int>> degree_;
  std::optional<IntMatrix> comp_;
  std::optional<std::vector<BigInt>> minors_;
};

using SquareCheck = Verdict (*)(SquareProfile&);
using MatrixCheck = Verdict (*)(MatrixProfile&);

struct Entry {
  ClaimInfo info;
  SquareCheck square = nullptr;
  MatrixCheck matrix = nullptr;
};

// ---------------------------------------------------------------------------
// Square claims

Verdict incl_excl(SquareProfile& p) {
  const int n = p.n();
  BigInt sum = 0;
  for (int r = 0; r <= n; ++r) sum += ((n - r) % 2 ? -1 : 1) * p.R().R(r);
  const BigInt via_det = signed_count_via_det(p.latin());
  return judge(sum == p.En() && via_det == p.signed_total(),
               {{"E_n", p.En()}, {"incl_excl", big(sum)}, {"signed", p.signed_total()}, {"signed_via_det", big(via_det)}});
}

Verdict eq_types(SquareProfile& p) {
  const auto& t = p.types();
  const std::int64_t w = t.w, x = t.x, y = t.y, z = t.z;
  const std::int64_t d0 = p.signed_total(), d1 = p.signed_count_of(Conjugacy{3, 1, 2}),
                     d2 = p.signed_count_of(Conjugacy{2, 3, 1});
  const std::int64_t en = static_cast<std::int64_t>(p.En());
  const bool ok = w + x + y + z == en && w + x - y - z == d0 && w - x + y - z == d1 && w - x - y + z == d2 &&
                  4 * w == en + d0 + d1 + d2;
  return judge(ok, {{"w", w}, {"x", x}, {"y", y}, {"z", z}, {"E_n", en}, {"signed", d0}, {"signed_312", d1},
                    {"signed_231", d2}});
}

Verdict bala(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  return judge(p.En() % 2 == 0, {{"E_n", p.En()}, {"E_n mod 2", md(p.En(), 2)}});
}

Verdict det_mult_4(SquareProfile& p) {
  if (p.n() % 4 != 2) return na("order is not 2 mod 4");
  return judge(md(p.signed_total(), 4) == 0, {{"signed", p.signed_total()}, {"signed mod 4", md(p.signed_total(), 4)}});
}

Verdict trans_mult_4(SquareProfile& p) {
  if (p.n() % 4 != 2) return na("order is not 2 mod 4");
  return judge(p.En() % 4 == 0, {{"E_n", p.En()}, {"E_n mod 4", md(p.En(), 4)}});
}

json types_witness(const ParityTypeCounts& t) { return {{"w", t.w}, {"x", t.x}, {"y", t.y}, {"z", t.z}}; }
bool types_agree(const ParityTypeCounts& t) { return t.w % 2 == t.x % 2 && t.x % 2 == t.y % 2 && t.y % 2 == t.z % 2; }

Verdict cor_types(SquareProfile& p) {
  if (p.n() % 4 != 2) return na("order is not 2 mod 4");
  return judge(types_agree(p.types()), types_witness(p.types()));
}

bool conj_a(SquareProfile& p) { return md(static_cast<std::int64_t>(p.En()) - p.signed_total(), 4) == 0; }

Verdict conj_even_a(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  return judge(conj_a(p), {{"E_n", p.En()}, {"signed", p.signed_total()}});
}

Verdict conj_even_b(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  return judge(types_agree(p.types()), types_witness(p.types()));
}

Verdict conj_even_equiv(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  const bool a = conj_a(p), b = types_agree(p.types());
  json w = types_witness(p.types());
  w["E_n"] = p.En();
  w["signed"] = p.signed_total();
  w["a"] = a;
  w["b"] = b;
  return judge(a == b, w);
}

Verdict same_delta_row(SquareProfile& p) {
  const auto& t = p.t();
  for (int a = 0; a < p.n(); ++a)
    for (int c = 1; c < p.n(); ++c)
      if (t[a][c] % 2 != t[a][0] % 2) return judge(false, {{"t", t}, {"row", a + 1}});
  return judge(true, {{"t", t}});
}

Verdict same_delta(SquareProfile& p) {
  const auto& t = p.t();
  bool ok = true;
  for (const auto& row : t)
    for (auto v : row) ok = ok && v % 2 == t[0][0] % 2;
  return judge(ok, {{"t", t}});
}

Verdict row_latin_even(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  std::vector<std::uint64_t> counts;
  bool ok = true;
  for (int r = 0; r < p.n(); ++r) {
    counts.push_back(count_transversals(p.grid().without(r, -1)));
    ok = ok && counts.back() % 2 == 0;
  }
  return judge(ok, {{"rectangle_transversals", counts}});
}

Verdict bala_row(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  return judge(p.En() % 2 == 0, {{"E_n", p.En()}});
}

Verdict delta_row(SquareProfile& p) {
  const auto& t = p.t();
  const auto& N = p.N_enumerated();
  bool ok = true;
  std::vector<std::uint64_t> sums;
  for (int r = 0; r < p.n(); ++r) {
    std::uint64_t s = 0;
    for (auto v : t[r]) s += v;
    sums.push_back(s);
    ok = ok && s == p.En() + N[r];
  }
  return judge(ok, {{"row_sums", sums}, {"E_n", p.En()}, {"N", N}});
}

Verdict delta_all(SquareProfile& p) {
  std::uint64_t s = 0;
  for (const auto& row : p.t())
    for (auto v : row) s += v;
  const BigInt e1 = p.E().E(p.n() - 1);
  const BigInt rhs = BigInt(p.n()) * p.En() + 2 * e1;
  return judge(rhs == s, {{"t_sum", s}, {"E_n", p.En()}, {"E_n-1", big(e1)}});
}

Verdict delta_eq_trans(SquareProfile& p) {
  if (p.n() % 2 == 0) return na("order is even");
  bool ok = true;
  for (const auto& row : p.t())
    for (auto v : row) ok = ok && v % 2 == p.En() % 2;
  return judge(ok, {{"t", p.t()}, {"E_n", p.En()}});
}

Verdict nr_even(SquareProfile& p) {
  std::string method;
  const auto N = p.N(&method);
  bool ok = std::all_of(N.begin(), N.end(), [](auto v) { return v % 2 == 0; });
  return judge(ok, {{"N", N}, {"method", method}});
}

Verdict quad_t(SquareProfile& p) {
  const auto& t = p.t();
  const int n = p.n();
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = c; d < n; ++d)
          if ((t[a][c] + t[b][c] + t[a][d] + t[b][d]) % 4 != 0)
            return judge(false, {{"t", t}, {"a", a + 1}, {"b", b + 1}, {"c", c + 1}, {"d", d + 1}});
  return judge(true, {{"t", t}});
}

json r_witness(const RSequence& r) {
  json a = json::array();
  for (int i = 1; i <= r.order; ++i) a.push_back(big(r.R(i)));
  return a;
}

Verdict identities_a(SquareProfile& p) { return judge(p.R().R(1) == p.n(), {{"R", r_witness(p.R())}}); }
Verdict identities_b(SquareProfile& p) {
  const int n = p.n();
  return judge(p.R().R(n - 1) == n * derangement(n), {{"R", r_witness(p.R())}, {"d_n", big(derangement(n))}});
}
Verdict identities_c(SquareProfile& p) {
  return judge(p.R().R(p.n()) == factorial(p.n()), {{"R", r_witness(p.R())}});
}
Verdict identities_d(SquareProfile& p) {
  bool ok = true;
  for (int i = 2; i <= p.n(); i += 2) ok = ok && is_even(p.R().R(i));
  return judge(ok, {{"R", r_witness(p.R())}});
}
Verdict identities_e(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  bool ok = true;
  for (int i = 0; i <= p.n(); ++i) ok = ok && is_even(p.R().R(i) + p.R().R(p.n() - i));
  return judge(ok, {{"R", r_witness(p.R())}});
}
Verdict identities_f(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  return judge(is_even(p.R().R(p.n() / 2)), {{"R", r_witness(p.R())}});
}

json e_witness(const DiagonalSpectrum& e) {
  json a = json::array();
  for (const auto& v : e.counts) a.push_back(big(v));
  return a;
}

Verdict en3_even(SquareProfile& p) {
  if (p.n() % 4 != 2 || p.n() < 4) return na("order is not 2 mod 4 with n >= 6");
  return judge(is_even(p.E().E(p.n() - 3)), {{"E", e_witness(p.E())}});
}

Verdict en1_even(SquareProfile& p) {
  if (p.n() < 2) return na("order below 2");
  return judge(is_even(p.E().E(p.n() - 1)), {{"E", e_witness(p.E())}});
}

Verdict r4k(SquareProfile& p) {
  if (p.n() % 2 == 0) return na("order is even");
  if (p.n() < 4) return na("no index 4k within the order");
  bool ok = true;
  for (int i = 4; i <= p.n(); i += 4) ok = ok && md(p.R().R(i), 4) == 0;
  return judge(ok, {{"R", r_witness(p.R())}});
}

Verdict rk_2rnk(SquareProfile& p) {
  const int n = p.n();
  if (n % 2 == 0) return na("order is even");
  if (n < 2) return na("no index k = 2 mod 4 within the order");
  bool ok = true;
  for (int k = 2; k <= n; k += 4) ok = ok && md(p.R().R(k) + 2 * p.R().R(n - k), 4) == 0;
  return judge(ok, {{"R", r_witness(p.R())}});
}

Verdict ei_odd_n(SquareProfile& p) {
  if (p.n() % 2 == 0) return na("order is even");
  bool ok = true;
  for (int i = 2; i <= p.n(); i += 2) ok = ok && is_even(p.E().E(i));
  return judge(ok, {{"E", e_witness(p.E())}});
}

Verdict en1_mod4_odd(SquareProfile& p) {
  if (p.n() % 2 == 0) return na("order is even");
  return judge(md(p.E().E(p.n() - 1), 4) == 0, {{"E", e_witness(p.E())}});
}

Verdict oddeven_sums(SquareProfile& p) {
  const int n = p.n();
  if (n % 2 || n <= 2) return na("order is not even and above 2");
  BigInt odd = 0, even = 0;
  for (int i = 1; i <= n; ++i) (i % 2 ? odd : even) += p.E().E(i);
  return judge(md(odd, 4) == n % 4 && md(even, 4) == n % 4,
               {{"E", e_witness(p.E())}, {"odd_sum mod 4", md(odd, 4)}, {"even_sum mod 4", md(even, 4)}});
}

Verdict even_diag(SquareProfile& p) {
  BigInt even = 0;
  for (int i = 2; i <= p.n(); i += 2) even += p.E().E(i);
  return judge(is_even(even), {{"E", e_witness(p.E())}});
}

Verdict odd_diag(SquareProfile& p) {
  if (p.n() < 2) return na("order below 2");
  BigInt odd = 0;
  for (int i = 1; i <= p.n(); i += 2) odd += p.E().E(i);
  return judge(is_even(odd), {{"E", e_witness(p.E())}});
}

Verdict evper(SquareProfile& p) {
  const int n = p.n();
  if (n % 2 || n <= 2) return na("order is not even and above 2");
  const auto& ev = p.Eev();
  BigInt lhs = 0, rhs = ev.E(1);
  for (int i = 3; i < n; i += 2) lhs += ev.E(i);
  for (int i = 2; i <= n; i += 2) rhs += ev.E(i);
  return judge(is_even(lhs) && is_even(rhs), {{"E_even", e_witness(ev)}});
}

Verdict e1ev_pis(SquareProfile& p) {
  const BigInt e1 = p.Eev().E(1);
  const int pis = p.parities().symbol;
  return judge(md(e1, 2) == mod_i64(p.n() - pis, 2), {{"E_1_even", big(e1)}, {"pi_s", pis}});
}

Verdict pair_parity(SquareProfile& p) {
  if (p.n() % 2) return na("order is odd");
  bool ok = true;
  for (int i = 1; 2 * i <= p.n(); ++i) ok = ok && md(p.E().E(2 * i - 1), 2) == md(p.E().E(2 * i), 2);
  return judge(ok, {{"E", e_witness(p.E())}});
}

Verdict tij_ek(SquareProfile& p) {
  const int n = p.n();
  if (n % 2) return na("order is odd");
  std::string method;
  const auto N = p.N(&method);
  const auto& t = p.t();
  const auto& E = p.E();
  json w = {{"E", e_witness(E)}, {"t", t}, {"N", N}, {"N_method", method}};
  const int target = md(E.E(n - 1), 4);
  bool ok = true;
  for (const auto& row : t)
    for (auto v : row) ok = ok && md(2 * v, 4) == target;
  for (auto v : N) ok = ok && md(v, 4) == target;
  if (n % 4 == 0) {
    ok = ok && md(p.En(), 4) == target && md(2 * E.E(n - 2), 4) == target;
    BigInt odd = 0, even = 0;
    for (int i = 1; i <= n; ++i) (i % 2 ? odd : even) += p.R().R(i);
    w["R"] = r_witness(p.R());
    ok = ok && md(odd, 4) == 0 && md(even, 4) == md(p.En(), 4);
    // Consequence when the chain holds.
    if (ok)
      for (auto v : N) ok = ok && (v + p.En()) % 4 == 0;
  }
  return judge(ok, w);
}

Verdict mod3(SquareProfile& p) {
  const int n = p.n();
  const BigInt r2 = r2_cycle_formula(p.latin());
  const BigInt e2 = p.E().E(2);
  const BigInt sign_n1 = (n % 2 ? -1 : 1) * BigInt(n + 1);
  const BigInt nn1 = BigInt(n) * (n - 1);
  bool ok = is_even(r2) && is_even(e2) && e2 == r2 - nn1 && md(r2, 3) != md(sign_n1, 3) && md(e2, 3) != md(sign_n1 - nn1, 3);
  json w = {{"R_2", big(r2)}, {"E_2", big(e2)}, {"R_2 mod 3", md(r2, 3)}, {"E_2 mod 3", md(e2, 3)}};
  if (n <= kRSequenceMaxOrder) {
    ok = ok && p.R().R(2) == r2;
    w["R_2_subsets"] = big(p.R().R(2));
  }
  return judge(ok, w);
}

Verdict derived_e8(SquareProfile& p) {
  if (p.n() % 4 != 3 || p.n() < 8) return na("order is not 3 mod 4 with n >= 11");
  return judge(md(p.E().E(8), 4) == 0, {{"E", e_witness(p.E())}});
}

// ---------------------------------------------------------------------------
// Matrix claims

Verdict even_perm(MatrixProfile& m) {
  if (!m.square() || m.n() == 0) return na("not a nonempty square matrix");
  if (!m.row_sums_even()) return na("some row sum is odd");
  return judge(is_even(m.per()) && is_even(m.det()), {{"per", big(m.per())}, {"det", big(m.det())}});
}

Verdict complement_det(MatrixProfile& m) {
  if (!m.square() || m.n() == 0 || m.n() % 2 || !m.A().is_zero_one()) return na("not a 0-1 matrix of even order");
  IntMatrix star = m.A();
  const auto sums = m.A().row_sums();
  for (int i = 0; i < m.n(); ++i)
    if (!is_even(sums[i]))
      for (int j = 0; j < m.n(); ++j) star(i, j) = 1 - star(i, j);
  const BigInt d2 = determinant(star);
  return judge(is_even(m.det() + d2), {{"det", big(m.det())}, {"det_star", big(d2)}});
}

Verdict det_mult4(MatrixProfile& m) {
  const auto k = m.degree();
  if (!k || m.n() % 2 || *k % 2) return na("not in Lambda_n^k with n, k even");
  return judge(md(m.det(), 4) == 0, {{"k", *k}, {"det", big(m.det())}});
}

Verdict sum_complement(MatrixProfile& m) {
  const auto k = m.degree();
  if (!k || m.n() % 4 != 2 || *k % 2 == 0) return na("not in Lambda_n^k with n = 2 mod 4, k odd");
  const BigInt dc = determinant(m.complement());
  return judge(md(m.det() + dc, 4) == 0, {{"k", *k}, {"det", big(m.det())}, {"det_complement", big(dc)}});
}

Verdict compdet(MatrixProfile& m) {
  const auto k = m.degree();
  if (!k || m.n() == 0) return na("not in Lambda_n^k");
  const int n = m.n();
  const BigInt dc = determinant(m.complement());
  const BigInt rhs = ((n - 1) % 2 ? -1 : 1) * BigInt(n - *k) * m.det();
  return judge(*k * dc == rhs, {{"k", *k}, {"det", big(m.det())}, {"det_complement", big(dc)}});
}

Verdict minors_mod2(MatrixProfile& m) {
  if (!m.square() || m.n() < 2) return na("not a square matrix of order above 1");
  const auto& minors = m.minors();
  const bool all_even = std::all_of(minors.begin(), minors.end(), [](const BigInt& v) { return is_even(v); });
  const bool all_odd = std::none_of(minors.begin(), minors.end(), [](const BigInt& v) { return is_even(v); });
  const int nu = gf2_nullity(m.A());
  const bool totals_even = m.row_sums_even() && m.column_sums_even();
  return judge(all_even == (nu >= 2) && all_odd == (nu == 1 && totals_even),
               {{"nullity", nu}, {"all_minors_even", all_even}, {"all_minors_odd", all_odd}, {"totals_even", totals_even}});
}

Verdict cor_minors_mod2(MatrixProfile& m) {
  if (!m.square() || m.n() < 2) return na("not a square matrix of order above 1");
  if (!m.row_sums_even() || !m.column_sums_even()) return na("some row or column sum is odd");
  const auto& minors = m.minors();
  const bool first = is_even(minors[0]);
  const bool ok = std::all_of(minors.begin(), minors.end(), [&](const BigInt& v) { return is_even(v) == first; });
  return judge(ok, {{"minor_parity", first ? 0 : 1}});
}

Verdict minors_quad(MatrixProfile& m) {
  const auto k = m.degree();
  if (!k || m.n() % 2 == 0 || *k % 4 != 2) return na("not in Lambda_n^k with n odd, k = 2 mod 4");
  const int n = m.n();
  std::vector<int> r(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i) * n + j] = md(m.minor(i, j), 4);
  auto at = [&](int i, int j) { return r[static_cast<std::size_t>(i) * n + j]; };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          if ((at(a, c) + at(b, c) + at(a, d) + at(b, d)) % 4)
            return judge(false, {{"k", *k}, {"minors_mod4", r}, {"a", a + 1}, {"b", b + 1}, {"c", c + 1}, {"d", d + 1}});
  return judge(true, {{"k", *k}, {"minors_mod4", r}});
}

Verdict per_2j(MatrixProfile& m) {
  const auto k = m.degree();
  if (!k || m.n() % 2 == 0 || *k % 4 != 2) return na("not in Lambda_n^k with n odd, k = 2 mod 4");
  const BigInt pc = permanent(m.complement());
  return judge(md(m.per() + 2 * pc, 4) == 0, {{"k", *k}, {"per", big(m.per())}, {"per_complement", big(pc)}});
}

Verdict per_mod4(MatrixProfile& m) {
  if (!m.square() || m.n() % 2 == 0) return na("not a square matrix of odd order");
  for (const auto& s : m.A().row_sums())
    if (md(s, 4) != 0) return na("some row sum is not a multiple of 4");
  if (!m.column_sums_even()) return na("some column sum is odd");
  return judge(md(m.per(), 4) == 0, {{"per", big(m.per())}});
}

Verdict per_lambda4k(MatrixProfile& m) {
  const auto k = m.degree();
  if (!k || m.n() % 2 == 0 || *k % 4 != 0) return na("not in Lambda_n^4k with n odd");
  return judge(md(m.per(), 4) == 0, {{"k", *k}, {"per", big(m.per())}});
}

const std::vector<Entry>& entries() {
  using K = ClaimKind;
  using S = SubjectKind;
  static const std::vector<Entry> all = {
      {{"thm-incl-excl", K::theorem, S::latin_square, "E_n and the signed count by inclusion-exclusion over symbol subsets"}, incl_excl},
      {{"eq-types", K::theorem, S::latin_square, "w+x+y+z = E_n, signed counts of L and its 312/231 conjugates, 4w identity"}, eq_types},
      {{"thm-bala", K::theorem, S::latin_square, "even n: E_n is even"}, bala},
      {{"thm-det-mult-4", K::theorem, S::latin_square, "n = 2 mod 4: signed count = 0 mod 4"}, det_mult_4},
      {{"thm-trans-mult-4", K::theorem, S::latin_square, "n = 2 mod 4: E_n = 0 mod 4"}, trans_mult_4},
      {{"cor-types", K::theorem, S::latin_square, "n = 2 mod 4: w = x = y = z mod 2"}, cor_types},
      {{"conj-even-a", K::conjecture, S::latin_square, "even n: E_n = signed count mod 4"}, conj_even_a},
      {{"conj-even-b", K::conjecture, S::latin_square, "even n: w = x = y = z mod 2"}, conj_even_b},
      {{"lem-conj-even-equiv", K::theorem, S::latin_square, "even n: the two conjectured congruences are equivalent"}, conj_even_equiv},
      {{"thm-same-delta-row", K::theorem, S::row_latin_square, "row-Latin: t_ab = t_ac mod 2"}, same_delta_row},
      {{"cor-same-delta", K::theorem, S::latin_square, "t_ab = t_cd mod 2"}, same_delta},
      {{"cor-row-latin-even", K::theorem, S::row_latin_square, "even n: every (n-1) x n row-Latin rectangle has an even transversal count"}, row_latin_even},
      {{"thm-bala-row", K::external, S::row_latin_square, "even n, row-Latin: E_n is even"}, bala_row},
      {{"lem-delta-row", K::theorem, S::latin_square, "sum_c t_rc = E_n + N_r"}, delta_row},
      {{"lem-delta-all", K::theorem, S::latin_square, "sum t = n E_n + 2 E_(n-1)"}, delta_all},
      {{"thm-delta-eq-trans", K::theorem, S::latin_square, "odd n: t_rc = E_n mod 2"}, delta_eq_trans},
      {{"cor-nr-even", K::theorem, S::latin_square, "N_r is even"}, nr_even},
      {{"conj-quad-t", K::conjecture, S::latin_square, "t_ac + t_bc + t_ad + t_bd = 0 mod 4"}, quad_t},
      {{"lem-identities-a", K::theorem, S::latin_square, "R_1 = n"}, identities_a},
      {{"lem-identities-b", K::theorem, S::latin_square, "R_(n-1) = n d_n"}, identities_b},
      {{"lem-identities-c", K::theorem, S::latin_square, "R_n = n!"}, identities_c},
      {{"lem-identities-d", K::theorem, S::latin_square, "R_2i is even"}, identities_d},
      {{"lem-identities-e", K::theorem, S::latin_square, "even n: R_i + R_(n-i) is even"}, identities_e},
      {{"lem-identities-f", K::theorem, S::latin_square, "even n: R_(n/2) is even"}, identities_f},
      {{"thm-En-3-even", K::external, S::latin_square, "n = 2 mod 4: E_(n-3) is even"}, en3_even},
      {{"thm-En-1-even", K::external, S::latin_square, "E_(n-1) is even"}, en1_even},
      {{"cor-R4k", K::theorem, S::latin_square, "odd n: R_4k = 0 mod 4"}, r4k},
      {{"cor-Rk-2Rnk", K::theorem, S::latin_square, "odd n, k = 2 mod 4: R_k + 2 R_(n-k) = 0 mod 4"}, rk_2rnk},
      {{"thm-Ei-odd-n", K::theorem, S::latin_square, "odd n: E_i is even for even i"}, ei_odd_n},
      {{"thm-En1-mod4-odd", K::theorem, S::latin_square, "odd n: E_(n-1) = 0 mod 4"}, en1_mod4_odd},
      {{"thm-oddeven-sums", K::theorem, S::latin_square, "even n > 2: E_1 + E_3 + ... = E_2 + E_4 + ... = n mod 4"}, oddeven_sums},
      {{"cor-even-diag", K::theorem, S::latin_square, "the number of diagonals with an even number of symbols is even"}, even_diag},
      {{"cor-odd-diag", K::theorem, S::latin_square, "n > 1: the number of diagonals with an odd number of symbols is even"}, odd_diag},
      {{"thm-evper", K::theorem, S::latin_square, "even n > 2: E3ev + E5ev + ... = E1ev + E2ev + E4ev + ... = 0 mod 2"}, evper},
      {{"obs-e1ev-pis", K::theorem, S::latin_square, "E1ev = n - pi_s mod 2"}, e1ev_pis},
      {{"thm-pair-parity", K::theorem, S::latin_square, "even n: E_(2i-1) = E_2i mod 2"}, pair_parity},
      {{"conj-tij-Ek", K::conjecture, S::latin_square, "even n: the E_n, E_(n-1), 2E_(n-2), 2t_ij, N_r residue chain mod 4 and the R parity sums"}, tij_ek},
      {{"lem-mod3", K::theorem, S::latin_square, "R_2, E_2 even; R_2 and E_2 avoid one residue mod 3"}, mod3},
      {{"derived-E8", K::theorem, S::latin_square, "n = 3 mod 4: E_8 = 0 mod 4"}, derived_e8},
      {{"doc-order8-22mod63", K::documentation, S::latin_square, "no order-8 Latin square has 22 mod 63 transversals (needs the full order-8 catalogue)"}},
      {{"lem-even-perm", K::theorem, S::matrix, "all row sums even: per and det are even"}, nullptr, even_perm},
      {{"lem-complement-det", K::theorem, S::matrix, "0-1, even order: det A + det A* is even"}, nullptr, complement_det},
      {{"lem-det-mult4", K::theorem, S::matrix, "Lambda_n^k, n and k even: det = 0 mod 4"}, nullptr, det_mult4},
      {{"lem-sum-complement", K::theorem, S::matrix, "Lambda_n^k, n = 2 mod 4, k odd: det A + det(J-A) = 0 mod 4"}, nullptr, sum_complement},
      {{"eq-compdet", K::theorem, S::matrix, "Lambda_n^k: k det(J-A) = (-1)^(n-1) (n-k) det A"}, nullptr, compdet},
      {{"thm-minors-mod2", K::theorem, S::matrix, "all minors even iff nullity >= 2; all odd iff nullity 1 and totals even"}, nullptr, minors_mod2},
      {{"cor-minors-mod2", K::theorem, S::matrix, "row and column sums even: all minors share a parity"}, nullptr, cor_minors_mod2},
      {{"thm-minors-quad", K::theorem, S::matrix, "Lambda_n^k, n odd, k = 2 mod 4: quadruple minor sums = 0 mod 4"}, nullptr, minors_quad},
      {{"thm-per-2J", K::theorem, S::matrix, "Lambda_n^k, n odd, k = 2 mod 4: per A + 2 per(J-A) = 0 mod 4"}, nullptr, per_2j},
      {{"thm-per-mod4", K::theorem, S::matrix, "n odd, row sums = 0 mod 4, column sums even: per = 0 mod 4"}, nullptr, per_mod4},
      {{"cor-per-lambda4k", K::theorem, S::matrix, "Lambda_n^4k, n odd: per = 0 mod 4"}, nullptr, per_lambda4k},
  };
  return all;
}

const Entry& entry(std::string_view key) {
  for (const auto& e : entries())
    if (e.info.key == key) return e;
  throw std::invalid_argument("unknown claim '" + std::string(key) + "'");
}

inline constexpr int kIndicatorMaxOrder = 8;

// Runs a matrix claim over every symbol-subset indicator matrix of a square.
Verdict over_indicators(MatrixCheck fn, const LatinSquare& l) {
  const int n = l.order();
  if (n > kIndicatorMaxOrder) throw CostGuardError("indicator matrices", n, kIndicatorMaxOrder);
  std::uint64_t applicable = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const IntMatrix a = indicator_matrix(l, mask);
    MatrixProfile mp(a);
    Verdict v = fn(mp);
    if (v.outcome == Outcome::fail) {
      json syms = json::array();
      for (int s = 0; s < n; ++s)
        if ((mask >> s) & 1u) syms.push_back(s + 1);
      return judge(false, {{"symbols", syms}, {"witness", v.witness}});
    }
    if (v.outcome == Outcome::pass) ++applicable;
  }
  if (!applicable) return na("no indicator matrix satisfies the hypothesis");
  return judge(true, {{"indicator_matrices", applicable}});
}

struct Evaluation {
  const Subject& subject;
  const SymbolGrid* grid = nullptr;
  const LatinSquare* latin = nullptr;
  const IntMatrix* matrix = nullptr;
  std::optional<SquareProfile> square;
  std::optional<MatrixProfile> mat;

  explicit Evaluation(const Subject& s) : subject(s) {
    if (auto* l = std::get_if<LatinSquare>(&s.value)) {
      latin = l;
      grid = &l->grid();
    } else if (auto* r = std::get_if<RowLatinSquare>(&s.value)) {
      grid = &r->grid();
    } else {
      matrix = &std::get<IntMatrix>(s.value);
    }
    if (grid) square.emplace(*grid, latin);
    if (matrix) mat.emplace(*matrix);
  }

  ClaimReport run(const Entry& e) {
    if (!accepts(e.info, subject))
      throw std::invalid_argument("claim '" + e.info.key + "' does not apply to subject kind of " + subject.id);
    ClaimReport rep;
    rep.claim = e.info.key;
    rep.kind = e.info.kind;
    rep.subject = subject.id;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      if (e.info.kind == ClaimKind::documentation)
        v = {Outcome::documentation, json::object(), e.info.statement};
      else if (e.square)
        v = e.square(*square);
      else if (matrix)
        v = e.matrix(*mat);
      else
        v = over_indicators(e.matrix, *latin);
    } catch (const CostGuardError& err) {
      v = {Outcome::skipped_cost, {{"guard", err.guard()}, {"limit", err.limit()}}, err.what()};
    }
    rep.outcome = v.outcome;
    rep.witness = std::move(v.witness);
    rep.note = std::move(v.note);
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
  }
};

std::string hex(std::uint64_t h) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::uint64_t matrix_hash(const IntMatrix& a) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : to_text(a)) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::string_view kind_name(ClaimKind k) {
  switch (k) {
    case ClaimKind::theorem: return "theorem";
    case ClaimKind::external: return "external";
    case ClaimKind::conjecture: return "conjecture";
    case ClaimKind::documentation: return "documentation";
  }
  return "?";
}

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::not_applicable: return "not-applicable";
    case Outcome::skipped_cost: return "skipped-cost";
    case Outcome::documentation: return "documentation";
  }
  return "?";
}

const std::vector<ClaimInfo>& claim_registry() {
  static const std::vector<ClaimInfo> infos = [] {
    std::vector<ClaimInfo> v;
    for (const auto& e : entries()) v.push_back(e.info);
    return v;
  }();
  return infos;
}

const ClaimInfo& claim_info(std::string_view key) { return entry(key).info; }

std::vector<std::string> claims_of_kind(ClaimKind kind) {
  std::vector<std::string> keys;
  for (const auto& c : claim_registry())
    if (c.kind == kind) keys.push_back(c.key);
  return keys;
}

std::vector<std::string> parse_claim_list(std::string_view list) {
  std::vector<std::string> keys;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string key(list.substr(pos, comma - pos));
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    if (!key.empty()) keys.push_back(claim_info(key).key);
    pos = comma + 1;
  }
  return keys;
}

Subject Subject::of(LatinSquare l) {
  std::string id = "sq" + std::to_string(l.order()) + "-" + hex(l.grid().hash());
  return {std::move(id), std::move(l)};
}

Subject Subject::of(RowLatinSquare l) {
  std::string id = "rl" + std::to_string(l.order()) + "-" + hex(l.grid().hash());
  return {std::move(id), std::move(l)};
}

Subject Subject::of(IntMatrix a, std::string id) {
  if (id.empty()) id = "mat" + std::to_string(a.rows()) + "-" + hex(matrix_hash(a));
  return {std::move(id), std::move(a)};
}

SubjectKind Subject::kind() const {
  if (std::holds_alternative<LatinSquare>(value)) return SubjectKind::latin_square;
  if (std::holds_alternative<RowLatinSquare>(value)) return SubjectKind::row_latin_square;
  return SubjectKind::matrix;
}

std::string Subject::serialized() const {
  if (auto* l = std::get_if<LatinSquare>(&value)) return to_lsq(*l);
  if (auto* r = std::get_if<RowLatinSquare>(&value)) return to_lsq(r->grid());
  return to_text(std::get<IntMatrix>(value));
}

bool accepts(const ClaimInfo& claim, const Subject& s) {
  switch (s.kind()) {
    case SubjectKind::latin_square: return true;
    case SubjectKind::row_latin_square: return claim.subject == SubjectKind::row_latin_square;
    case SubjectKind::matrix: return claim.subject == SubjectKind::matrix;
  }
  return false;
}

nlohmann::json to_json(const ClaimReport& r) {
  json j = {{"claim", r.claim},       {"kind", kind_name(r.kind)}, {"subject", r.subject},
            {"outcome", outcome_name(r.outcome)}, {"holds", r.holds()},    {"witness", r.witness},
            {"elapsed_ms", r.elapsed_ms}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

ClaimReport check(std::string_view key, const Subject& subject) {
  const Entry& e = entry(key);
  Evaluation ev(subject);
  return ev.run(e);
}

void Tally::add(Outcome o) {
  switch (o) {
    case Outcome::pass: ++pass; break;
    case Outcome::fail: ++fail; break;
    case Outcome::not_applicable: ++not_applicable; break;
    case Outcome::skipped_cost: ++skipped_cost; break;
    case Outcome::documentation: ++documentation; break;
  }
}

bool SuiteReport::theorem_failure() const {
  return std::any_of(failures.begin(), failures.end(), [](const Counterexample& c) {
    return c.kind == ClaimKind::theorem || c.kind == ClaimKind::external;
  });
}

bool SuiteReport::conjecture_counterexample() const {
  return std::any_of(failures.begin(), failures.end(),
                     [](const Counterexample& c) { return c.kind == ClaimKind::conjecture; });
}

nlohmann::json SuiteReport::summary_json() const {
  json j;
  j["subjects"] = subjects;
  json t = json::object();
  for (const auto& [key, tally] : tallies)
    t[key] = {{"kind", kind_name(claim_info(key).kind)},
              {"pass", tally.pass},
              {"fail", tally.fail},
              {"not_applicable", tally.not_applicable},
              {"skipped_cost", tally.skipped_cost},
              {"documentation", tally.documentation}};
  j["tallies"] = t;
  json f = json::array();
  for (const auto& c : failures)
    f.push_back({{"claim", c.claim}, {"kind", kind_name(c.kind)}, {"subject", c.subject}, {"square", c.serialized},
                 {"witness", c.witness}});
  j["failures"] = f;
  return j;
}

std::string SuiteReport::summary_table() const {
  std::ostringstream out;
  out << std::left << std::setw(22) << "claim" << std::setw(12) << "kind" << std::right << std::setw(9) << "pass"
      << std::setw(7) << "fail" << std::setw(9) << "n/a" << std::setw(9) << "skipped" << std::setw(5) << "doc" << '\n';
  // Registry order rather than alphabetical.
  for (const auto& info : claim_registry()) {
    auto it = tallies.find(info.key);
    if (it == tallies.end()) continue;
    const Tally& t = it->second;
    out << std::left << std::setw(22) << info.key << std::setw(12) << kind_name(info.kind) << std::right
        << std::setw(9) << t.pass << std::setw(7) << t.fail << std::setw(9) << t.not_applicable << std::setw(9)
        << t.skipped_cost << std::setw(5) << t.documentation << '\n';
  }
  out << subjects << " subjects, " << failures.size() << " failures\n";
  return out.str();
}

SuiteReport run_suite(const std::function<std::optional<Subject>()>& next, std::span<const std::string> claims,
                      const SuiteOptions& opt) {
  std::vector<const Entry*> selected;
  for (const auto& key : claims) selected.push_back(&entry(key));
  SuiteReport report;
  const unsigned threads = std::max(1u, opt.threads);
  const std::size_t chunk = std::max<std::size_t>(1, opt.chunk);
  bool halted = false;
  while (!halted) {
    std::vector<Subject> batch;
    while (batch.size() < chunk) {
      auto s = next();
      if (!s) break;
      batch.push_back(std::move(*s));
    }
    if (batch.empty()) break;
    std::vector<std::vector<ClaimReport>> results(batch.size());
    auto work = [&](std::size_t i) {
      Evaluation ev(batch[i]);
      for (const Entry* e : selected)
        if (accepts(e->info, batch[i])) results[i].push_back(ev.run(*e));
    };
    if (threads == 1 || batch.size() == 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) work(i);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
          for (std::size_t i = t; i < batch.size(); i += threads) work(i);
        });
      for (auto& th : pool) th.join();
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      ++report.subjects;
      bool failed = false;
      for (const auto& rep : results[i]) {
        report.tallies[rep.claim].add(rep.outcome);
        if (opt.sink) opt.sink(rep);
        if (rep.outcome == Outcome::fail) {
          failed = true;
          report.failures.push_back({rep.claim, rep.kind, rep.subject, batch[i].serialized(), rep.witness});
        }
      }
      if (failed && opt.halt_on_failure) {
        halted = true;
        break;
      }
    }
  }
  std::sort(report.failures.begin(), report.failures.end());
  return report;
}

SuiteReport run_suite(const std::vector<Subject>& subjects, std::span<const std::string> claims,
                      const SuiteOptions& opt) {
  std::size_t i = 0;
  return run_suite([&]() -> std::optional<Subject> { return i < subjects.size() ? std::optional(subjects[i++]) : std::nullopt; },
                   claims, opt);
}

}  // namespace lparity

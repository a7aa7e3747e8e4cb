#include "lparity/spectrum.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <thread>

namespace lparity {

namespace {

inline int shifted_popcount_parity(std::uint64_t used, int c) {
  // Parity of the number of used positions strictly above c.
  return std::popcount((used >> c) >> 1) & 1;
}

// Backtracking over rows of a grid with rows <= cols. `blocked_[d * m + r]`
// holds the columns of row r whose symbol was consumed by rows < d, so the
// candidate set of a row is a single mask expression.
class TransversalWalker {
 public:
  explicit TransversalWalker(const SymbolGrid& g) : grid_(g), m_(g.rows()) {
    full_ = g.cols() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.cols()) - 1;
    colbit_.assign(static_cast<std::size_t>(m_) * g.symbols(), 0);
    for (int r = 0; r < m_; ++r)
      for (int c = 0; c < g.cols(); ++c)
        colbit_[static_cast<std::size_t>(r) * g.symbols() + g(r, c)] = std::uint64_t{1} << c;
    blocked_.assign(static_cast<std::size_t>(m_ + 1) * std::max(m_, 1), 0);
  }

  std::uint64_t count() {
    if (m_ == 0) return 1;
    return count_from(0, 0);
  }

  /// Calls leaf(eps_row_to_col, eps_row_to_symbol) for every transversal.
  template <typename Leaf>
  void walk(Leaf&& leaf) {
    if (m_ == 0) {
      leaf(0, 0);
      return;
    }
    walk_from(0, 0, 0, 0, 0, leaf);
  }

 private:
  std::uint64_t* blocked(int depth) { return &blocked_[static_cast<std::size_t>(depth) * m_]; }

  void propagate(int r, Symbol s) {
    const std::uint64_t* cur = blocked(r);
    std::uint64_t* next = blocked(r + 1);
    const int symbols = grid_.symbols();
    for (int q = r + 1; q < m_; ++q) next[q] = cur[q] | colbit_[static_cast<std::size_t>(q) * symbols + s];
  }

  std::uint64_t count_from(int r, std::uint64_t used_cols) {
    std::uint64_t cand = full_ & ~used_cols & ~blocked(r)[r];
    if (r == m_ - 1) return static_cast<std::uint64_t>(std::popcount(cand));
    std::uint64_t total = 0;
    while (cand) {
      const int c = std::countr_zero(cand);
      cand &= cand - 1;
      propagate(r, grid_(r, c));
      total += count_from(r + 1, used_cols | (std::uint64_t{1} << c));
    }
    return total;
  }

  template <typename Leaf>
  void walk_from(int r, std::uint64_t used_cols, std::uint64_t used_syms, int par_col, int par_sym, Leaf& leaf) {
    std::uint64_t cand = full_ & ~used_cols & ~blocked(r)[r];
    while (cand) {
      const int c = std::countr_zero(cand);
      cand &= cand - 1;
      const Symbol s = grid_(r, c);
      const int pc = par_col ^ shifted_popcount_parity(used_cols, c);
      const int ps = par_sym ^ shifted_popcount_parity(used_syms, s);
      if (r == m_ - 1) {
        leaf(pc, ps);
        continue;
      }
      propagate(r, s);
      walk_from(r + 1, used_cols | (std::uint64_t{1} << c), used_syms | (std::uint64_t{1} << s), pc, ps, leaf);
    }
  }

  const SymbolGrid& grid_;
  int m_;
  std::uint64_t full_ = 0;
  std::vector<std::uint64_t> colbit_;
  std::vector<std::uint64_t> blocked_;
};

void require_order(const char* guard, int n, int limit) {
  if (n > limit) throw CostGuardError(guard, n, limit);
}

class CensusWalker {
 public:
  explicit CensusWalker(const LatinSquare& l)
      : l_(l), n_(l.order()), E_(n_ + 1, 0), Eev_(n_ + 1, 0), N_(n_, 0), dup_first_(n_, -1) {}

  void run_from_root() { walk(0, 0, 0, 0); }

  // Restrict row 0 to column `c0`.
  void run_with_first(int c0) {
    const Symbol s = l_(0, c0);
    counts_[s] = 1;
    first_row_[s] = 0;
    dup_first_[0] = -1;
    if (n_ == 1)
      leaf(1, 0);
    else
      walk(1, std::uint64_t{1} << c0, 1, 0);
    counts_[s] = 0;
  }

  void merge_into(std::vector<std::uint64_t>& E, std::vector<std::uint64_t>& Eev, std::vector<std::uint64_t>& N) const {
    for (int i = 0; i <= n_; ++i) {
      E[i] += E_[i];
      Eev[i] += Eev_[i];
    }
    for (int r = 0; r < n_; ++r) N[r] += N_[r];
  }

 private:
  void leaf(int distinct, int parity) {
    ++E_[distinct];
    if (!parity) ++Eev_[distinct];
    if (distinct == n_ - 1) {
      for (int d = 0; d < n_; ++d)
        if (dup_first_[d] >= 0) {
          ++N_[d];
          ++N_[dup_first_[d]];
          break;
        }
    }
  }

  void walk(int r, std::uint64_t used, int distinct, int parity) {
    std::uint64_t cand = ~used & ((n_ == 64) ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1);
    while (cand) {
      const int c = std::countr_zero(cand);
      cand &= cand - 1;
      const Symbol s = l_(r, c);
      const int p = parity ^ shifted_popcount_parity(used, c);
      int d = distinct;
      if (counts_[s] == 0) {
        first_row_[s] = r;
        ++d;
        dup_first_[r] = -1;
      } else {
        dup_first_[r] = counts_[s] == 1 ? first_row_[s] : -1;
      }
      ++counts_[s];
      if (r == n_ - 1)
        leaf(d, p);
      else
        walk(r + 1, used | (std::uint64_t{1} << c), d, p);
      --counts_[s];
    }
  }

  const LatinSquare& l_;
  int n_;
  std::array<int, kMaxOrder> counts_{};
  std::array<int, kMaxOrder> first_row_{};
  std::vector<std::uint64_t> E_, Eev_, N_;
  std::vector<int> dup_first_;
};

DiagonalSpectrum to_spectrum(int n, bool even, const std::vector<std::uint64_t>& by_weight) {
  DiagonalSpectrum s;
  s.order = n;
  s.even_only = even;
  for (int m = 1; m <= n; ++m) s.counts.emplace_back(by_weight[m]);
  return s;
}

std::vector<std::uint64_t> symbol_column_bits(const LatinSquare& l) {
  // bits[r * n + s] = bit of the column holding s in row r.
  const int n = l.order();
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) bits[static_cast<std::size_t>(r) * n + l(r, c)] = std::uint64_t{1} << c;
  return bits;
}

}  // namespace

BigInt DiagonalSpectrum::total() const {
  BigInt t = 0;
  for (const auto& c : counts) t += c;
  return t;
}

std::uint64_t DepletedCounts::t_sum() const {
  std::uint64_t s = 0;
  for (const auto& row : t)
    for (auto v : row) s += v;
  return s;
}

std::uint64_t count_transversals(const SymbolGrid& g) {
  if (g.rows() > g.cols()) {
    const SymbolGrid t = g.transposed();
    return TransversalWalker(t).count();
  }
  return TransversalWalker(g).count();
}

std::int64_t signed_count(const LatinSquare& l) {
  std::int64_t total = 0;
  TransversalWalker(l.grid()).walk([&](int par_col, int) { total += par_col ? -1 : 1; });
  return total;
}

BigInt signed_count_via_det(const LatinSquare& l) {
  const int n = l.order();
  require_order("signed_count_via_det", n, kSignedViaDetMaxOrder);
  const auto bits = symbol_column_bits(l);
  BigInt total = 0;
  std::vector<std::int64_t> entries(static_cast<std::size_t>(n) * n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) entries[static_cast<std::size_t>(r) * n + c] = (mask >> l(r, c)) & 1u;
    BigInt d;
    if (auto small = determinant_i64(entries, n))
      d = *small;
    else
      d = determinant(indicator_matrix(l, mask));
    if ((n - std::popcount(mask)) & 1)
      total -= d;
    else
      total += d;
  }
  return total;
}

ParityTypeCounts parity_type_counts(const LatinSquare& l) {
  ParityTypeCounts counts;
  TransversalWalker(l.grid()).walk([&](int eps_r, int eps_rs) {
    // sigma_s is the inverse of row -> symbol; sigma_c = (row -> symbol) o sigma_r^-1.
    const int eps_s = eps_rs;
    const int eps_c = eps_r ^ eps_rs;
    if (!eps_r && !eps_c && !eps_s)
      ++counts.w;
    else if (!eps_r)
      ++counts.x;
    else if (!eps_c)
      ++counts.y;
    else
      ++counts.z;
  });
  return counts;
}

DiagonalCensus diagonal_census(const LatinSquare& l, const ExecOptions& exec) {
  const int n = l.order();
  require_order("diagonal enumeration", n, kSpectrumMaxOrder);
  std::vector<std::uint64_t> E(n + 1, 0), Eev(n + 1, 0), N(n, 0);
  const unsigned threads = std::clamp<unsigned>(exec.threads, 1, static_cast<unsigned>(n));
  if (threads == 1) {
    CensusWalker w(l);
    w.run_from_root();
    w.merge_into(E, Eev, N);
  } else {
    // First-row column choices are independent subtrees; results merge by addition.
    std::vector<CensusWalker> walkers;
    walkers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) walkers.emplace_back(l);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int c0 = static_cast<int>(t); c0 < n; c0 += static_cast<int>(threads)) walkers[t].run_with_first(c0);
      });
    for (auto& th : pool) th.join();
    for (const auto& w : walkers) w.merge_into(E, Eev, N);
  }
  return {to_spectrum(n, false, E), to_spectrum(n, true, Eev), N};
}

DiagonalSpectrum spectrum_enumerate(const LatinSquare& l, const ExecOptions& exec) {
  return diagonal_census(l, exec).plain;
}

DiagonalSpectrum ev_spectrum(const LatinSquare& l, const ExecOptions& exec) { return diagonal_census(l, exec).even; }

IntMatrix indicator_matrix(const LatinSquare& l, std::uint64_t symbol_mask) {
  const int n = l.order();
  IntMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = (symbol_mask >> l(r, c)) & 1u;
  return m;
}

BigInt angle_eval(const LatinSquare& l, std::uint64_t symbol_mask, PermanentMode mode) {
  const IntMatrix m = indicator_matrix(l, symbol_mask);
  switch (mode) {
    case PermanentMode::per: return permanent(m);
    case PermanentMode::det: return determinant(m);
    case PermanentMode::even_per: return even_permanent(m);
  }
  return 0;
}

RSequence r_sequence(const LatinSquare& l, PermanentMode mode) {
  const int n = l.order();
  require_order("r_sequence", n, kRSequenceMaxOrder);
  if (mode == PermanentMode::det) throw std::invalid_argument("r_sequence supports per and even_per");
  const auto bits = symbol_column_bits(l);
  std::vector<std::int64_t> sums(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
  std::vector<std::int64_t> entries(static_cast<std::size_t>(n) * n);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < count; ++mask) {
    for (int r = 0; r < n; ++r) {
      std::uint64_t row = 0;
      for (std::uint64_t m = mask; m; m &= m - 1) row |= bits[static_cast<std::size_t>(r) * n + std::countr_zero(m)];
      rows[r] = row;
    }
    std::int64_t value = permanent_01(rows, n);
    if (mode == PermanentMode::even_per) {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) entries[static_cast<std::size_t>(r) * n + c] = (rows[r] >> c) & 1u;
      const auto det = determinant_i64(entries, n);
      if (!det) throw std::logic_error("0-1 determinant left 64-bit range");
      if ((value + *det) % 2 != 0) throw std::logic_error("per + det odd");
      value = (value + *det) / 2;
    }
    sums[static_cast<std::size_t>(std::popcount(mask))] += value;
  }
  RSequence seq;
  seq.order = n;
  seq.mode = mode;
  for (auto v : sums) seq.values.emplace_back(v);
  return seq;
}

DiagonalSpectrum spectrum_from_r(const RSequence& rs) {
  const int n = rs.order;
  DiagonalSpectrum s;
  s.order = n;
  s.even_only = rs.mode == PermanentMode::even_per;
  for (int m = 1; m <= n; ++m) {
    BigInt e = 0;
    for (int r = 1; r <= m; ++r) {
      const BigInt term = binomial(n - r, n - m) * rs.R(r);
      if ((m - r) & 1)
        e -= term;
      else
        e += term;
    }
    s.counts.push_back(e);
  }
  return s;
}

BigInt r2_cycle_formula(const LatinSquare& l) {
  const int n = l.order();
  const auto theta = symbol_permutations(l);
  // Inverse of theta_s: column -> row.
  std::vector<std::vector<int>> inverse(n, std::vector<int>(n));
  for (int s = 0; s < n; ++s)
    for (int r = 0; r < n; ++r) inverse[s][theta[s][r]] = r;
  BigInt total = 0;
  std::vector<bool> seen(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t) {
      std::fill(seen.begin(), seen.end(), false);
      int cycles = 0;
      for (int r = 0; r < n; ++r) {
        if (seen[r]) continue;
        ++cycles;
        for (int q = r; !seen[q]; q = inverse[s][theta[t][q]]) seen[q] = true;
      }
      total += BigInt(1) << cycles;
    }
  return total;
}

std::vector<std::vector<std::uint64_t>> depleted_transversals(const LatinSquare& l) {
  const int n = l.order();
  std::vector<std::vector<std::uint64_t>> t(n, std::vector<std::uint64_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = count_transversals(l.grid().without(i, j));
  return t;
}

std::vector<std::uint64_t> n_from_identity(const std::vector<std::vector<std::uint64_t>>& t, std::uint64_t e_n) {
  std::vector<std::uint64_t> N;
  for (const auto& row : t) {
    std::uint64_t s = 0;
    for (auto v : row) s += v;
    if (s < e_n) throw std::logic_error("row sum of t below E_n");
    N.push_back(s - e_n);
  }
  return N;
}

std::uint64_t e_n_minus_1_from_depleted(const std::vector<std::vector<std::uint64_t>>& t, std::uint64_t e_n) {
  std::uint64_t s = 0;
  for (const auto& row : t)
    for (auto v : row) s += v;
  const std::uint64_t n = t.size();
  const std::uint64_t rest = s - n * e_n;
  if (s < n * e_n || rest % 2) throw std::logic_error("sum of t inconsistent with E_n");
  return rest / 2;
}

DepletedCounts depleted_counts(const LatinSquare& l, NrMethod method) {
  DepletedCounts d;
  d.order = l.order();
  d.t = depleted_transversals(l);
  if (method == NrMethod::enumerate)
    d.N = diagonal_census(l).N;
  else
    d.N = n_from_identity(d.t, count_transversals(l));
  return d;
}

nlohmann::json to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(v);
  return v.str();
}

nlohmann::json to_json(const SpectrumReport& rep) {
  nlohmann::json j;
  j["order"] = rep.order;
  auto list = [](const auto& values) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& v : values) a.push_back(to_json(BigInt(v)));
    return a;
  };
  if (rep.E) j["E"] = list(rep.E->counts);
  if (rep.E_even) j["E_even"] = list(rep.E_even->counts);
  if (rep.R) j["R"] = list(std::vector<BigInt>(rep.R->values.begin() + 1, rep.R->values.end()));
  if (rep.R_even) j["R_even"] = list(std::vector<BigInt>(rep.R_even->values.begin() + 1, rep.R_even->values.end()));
  if (rep.transversals) j["transversals"] = *rep.transversals;
  if (rep.signed_count) j["signed"] = *rep.signed_count;
  if (rep.types) j["types"] = {{"w", rep.types->w}, {"x", rep.types->x}, {"y", rep.types->y}, {"z", rep.types->z}};
  if (rep.depleted) {
    j["t"] = rep.depleted->t;
    j["N"] = rep.depleted->N;
  }
  return j;
}

}  // namespace lparity

#include "lparity/algebra.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <tuple>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "lparity/kernels/ryser.hpp"

namespace lparity {

namespace {

void require_square(const IntMatrix& a) {
  if (!a.square()) throw std::invalid_argument("matrix must be square");
}

constexpr int kMaxRyserOrder = 40;

/// prod_i sum_j |a_ij|; bounds |per A|.
BigInt permanent_bound(const IntMatrix& a) {
  BigInt bound = 1;
  for (int i = 0; i < a.rows(); ++i) {
    BigInt row = 0;
    for (int j = 0; j < a.cols(); ++j) row += abs(a(i, j));
    bound *= row;
  }
  return bound;
}

// Gray-code Ryser in wrapping 64-bit arithmetic. Exact when |per| < 2^63,
// which the caller guarantees through the row-sum bound.
std::int64_t ryser_word(const IntMatrix& a) {
  const int n = a.rows();
  std::vector<std::int64_t> entry(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) entry[static_cast<std::size_t>(j) * n + i] = static_cast<std::int64_t>(a(i, j));
  std::vector<std::int64_t> rowsum(static_cast<std::size_t>(n), 0);
  std::uint64_t total = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    const int j = std::countr_zero(g);
    const std::uint64_t gray = g ^ (g >> 1);
    const std::int64_t* col = &entry[static_cast<std::size_t>(j) * n];
    if ((gray >> j) & 1u)
      for (int i = 0; i < n; ++i) rowsum[i] += col[i];
    else
      for (int i = 0; i < n; ++i) rowsum[i] -= col[i];
    std::uint64_t prod = 1;
    for (int i = 0; i < n; ++i) prod *= static_cast<std::uint64_t>(rowsum[i]);
    if ((n - std::popcount(gray)) & 1)
      total -= prod;
    else
      total += prod;
  }
  return static_cast<std::int64_t>(total);
}

BigInt ryser_bigint(const IntMatrix& a) {
  const int n = a.rows();
  std::vector<BigInt> rowsum(static_cast<std::size_t>(n), BigInt(0));
  BigInt total = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    const int j = std::countr_zero(g);
    const std::uint64_t gray = g ^ (g >> 1);
    const bool added = (gray >> j) & 1u;
    for (int i = 0; i < n; ++i) {
      if (added)
        rowsum[i] += a(i, j);
      else
        rowsum[i] -= a(i, j);
    }
    BigInt prod = 1;
    for (int i = 0; i < n; ++i) prod *= rowsum[i];
    if ((n - std::popcount(gray)) & 1)
      total -= prod;
    else
      total += prod;
  }
  return total;
}

kernels::RyserProblem make_problem(const IntMatrix& a, std::vector<std::uint32_t> moduli) {
  kernels::RyserProblem p;
  p.n = a.rows();
  while (moduli.size() % kernels::kLaneWidth) moduli.push_back(moduli.back());
  p.moduli = std::move(moduli);
  const int n = p.n;
  const int lanes = p.lanes();
  p.entries.resize(static_cast<std::size_t>(n) * n * lanes);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < lanes; ++l)
        p.entries[(static_cast<std::size_t>(j) * n + i) * lanes + l] =
            static_cast<std::uint32_t>(mod_u64(a(i, j), p.moduli[l]));
  return p;
}

std::vector<std::uint32_t> sweep(const kernels::RyserProblem& p, const ExecOptions& exec) {
  const std::uint64_t count = std::uint64_t{1} << p.n;
  const int lanes = p.lanes();
  std::vector<std::uint32_t> result(static_cast<std::size_t>(lanes), 0);
  if (count <= 1) return result;
  const kernels::Isa isa = kernels::active_isa();
  const std::uint64_t work = count - 1;
  const unsigned threads = static_cast<unsigned>(
      std::clamp<std::uint64_t>(exec.threads, 1, std::max<std::uint64_t>(1, work >> 12)));
  if (threads == 1) {
    kernels::ryser_sweep(p, 1, count, result, isa);
    return result;
  }
  // Contiguous ranges, each seeding its own Gray state; residues add associatively.
  std::vector<std::vector<std::uint32_t>> partial(threads, std::vector<std::uint32_t>(lanes));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    const std::uint64_t lo = 1 + work * t / threads;
    const std::uint64_t hi = 1 + work * (t + 1) / threads;
    pool.emplace_back([&, t, lo, hi] { kernels::ryser_sweep(p, lo, hi, partial[t], isa); });
  }
  for (auto& th : pool) th.join();
  for (int l = 0; l < lanes; ++l) {
    std::uint64_t acc = 0;
    for (unsigned t = 0; t < threads; ++t) acc = (acc + partial[t][l]) % p.moduli[l];
    result[l] = static_cast<std::uint32_t>(acc);
  }
  return result;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  std::int64_t g = m, x = 0, x1 = 1, a1 = mod_i64(a, m);
  while (a1) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw std::logic_error("moduli not coprime");
  return mod_i64(x, m);
}

/// Symmetric CRT reconstruction over distinct coprime moduli.
BigInt crt_symmetric(std::span<const std::uint32_t> residues, std::span<const std::uint32_t> moduli) {
  BigInt value = 0, modulus = 1;
  for (std::size_t k = 0; k < moduli.size(); ++k) {
    const std::int64_t m = moduli[k];
    // value + modulus * t == residue (mod m)
    const std::int64_t current = static_cast<std::int64_t>(mod_u64(value, static_cast<std::uint64_t>(m)));
    const std::int64_t step = static_cast<std::int64_t>(mod_u64(modulus, static_cast<std::uint64_t>(m)));
    const std::int64_t diff = mod_i64(static_cast<std::int64_t>(residues[k]) - current, m);
    const std::int64_t t = static_cast<std::int64_t>(
        (static_cast<__int128>(diff) * inverse_mod(step, m)) % m);
    value += modulus * t;
    modulus *= m;
  }
  if (value * 2 > modulus) value -= modulus;
  return value;
}

}  // namespace

BigInt permanent(const IntMatrix& a, const ExecOptions& exec) {
  require_square(a);
  const int n = a.rows();
  if (n == 0) return 1;
  if (n > kMaxRyserOrder) throw std::invalid_argument("permanent order exceeds 40");
  const BigInt bound = permanent_bound(a);
  if (bound == 0) return 0;
  if (bound < (BigInt(1) << 62)) return ryser_word(a);

  const auto primes = kernels::ryser_primes();
  const BigInt needed = 2 * bound + 1;
  std::vector<std::uint32_t> moduli;
  BigInt product = 1;
  for (std::uint32_t q : primes) {
    if (product > needed && moduli.size() % kernels::kLaneWidth == 0) break;
    moduli.push_back(q);
    product *= q;
  }
  if (product <= needed) return ryser_bigint(a);
  const auto problem = make_problem(a, moduli);
  const auto residues = sweep(problem, exec);
  return crt_symmetric(residues, moduli);
}

std::uint64_t permanent_mod(const IntMatrix& a, std::uint64_t m, const ExecOptions& exec) {
  require_square(a);
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  if (m == 1) return 0;
  const int n = a.rows();
  if (n == 0) return 1;
  if (m >= kernels::kMaxModulus || n > kMaxRyserOrder) return mod_u64(permanent(a, exec), m);
  const auto problem = make_problem(a, {static_cast<std::uint32_t>(m)});
  return sweep(problem, exec)[0];
}

BigInt permanent_bruteforce(const IntMatrix& a) {
  require_square(a);
  const int n = a.rows();
  if (n > kBruteForceMaxOrder) throw std::invalid_argument("brute-force permanent limited to order 9");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    BigInt prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) prod *= a(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::optional<std::int64_t> determinant_i64(std::span<const std::int64_t> entries, int n) {
  if (n == 0) return 1;
  std::vector<std::int64_t> m(entries.begin(), entries.end());
  auto at = [&](int r, int c) -> std::int64_t& { return m[static_cast<std::size_t>(r) * n + c]; };
  std::int64_t prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        const __int128 num = static_cast<__int128>(at(i, j)) * at(k, k) - static_cast<__int128>(at(i, k)) * at(k, j);
        const __int128 q = num / prev;
        if (q > std::numeric_limits<std::int64_t>::max() || q < std::numeric_limits<std::int64_t>::min())
          return std::nullopt;
        at(i, j) = static_cast<std::int64_t>(q);
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  const std::int64_t d = at(n - 1, n - 1);
  return sign > 0 ? d : -d;
}

BigInt determinant(const IntMatrix& a) {
  require_square(a);
  const int n = a.rows();
  if (n == 0) return 1;
  bool small = true;
  for (int i = 0; i < n && small; ++i)
    for (int j = 0; j < n && small; ++j) small = abs(a(i, j)) < (BigInt(1) << 62);
  if (small) {
    std::vector<std::int64_t> e(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) e[static_cast<std::size_t>(i) * n + j] = static_cast<std::int64_t>(a(i, j));
    if (auto d = determinant_i64(e, n)) return *d;
  }
  std::vector<BigInt> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i) * n + j] = a(i, j);
  auto at = [&](int r, int c) -> BigInt& { return m[static_cast<std::size_t>(r) * n + c]; };
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(at(k, c), at(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

BigInt even_permanent(const IntMatrix& a) {
  const BigInt sum = permanent(a) + determinant(a);
  if (!is_even(sum)) throw std::logic_error("per + det is odd; permanent or determinant is wrong");
  return sum / 2;
}

BigInt even_permanent_bruteforce(const IntMatrix& a) {
  require_square(a);
  const int n = a.rows();
  if (n > kEvenPermanentOracleMaxOrder) throw std::invalid_argument("alternating-group oracle limited to order 7");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  BigInt total = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    if (inversions & 1) continue;
    BigInt prod = 1;
    for (int i = 0; i < n && prod != 0; ++i) prod *= a(i, perm[i]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

BigInt permanental_minor(const IntMatrix& a, int row, int col) {
  require_square(a);
  return permanent(a.minor(row, col));
}

int gf2_rank(const IntMatrix& a) {
  const int rows = a.rows();
  const int cols = a.cols();
  const int words = (cols + 63) / 64;
  std::vector<std::uint64_t> bits(static_cast<std::size_t>(rows) * words, 0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!is_even(a(r, c))) bits[static_cast<std::size_t>(r) * words + c / 64] |= std::uint64_t{1} << (c % 64);
  auto row = [&](int r) { return &bits[static_cast<std::size_t>(r) * words]; };
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    const int w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    int pivot = rank;
    while (pivot < rows && !(row(pivot)[w] & bit)) ++pivot;
    if (pivot == rows) continue;
    if (pivot != rank) std::swap_ranges(row(pivot), row(pivot) + words, row(rank));
    for (int r = 0; r < rows; ++r) {
      if (r == rank || !(row(r)[w] & bit)) continue;
      for (int k = 0; k < words; ++k) row(r)[k] ^= row(rank)[k];
    }
    ++rank;
  }
  return rank;
}

int gf2_nullity(const IntMatrix& a) { return a.cols() - gf2_rank(a); }

BigInt derangement(unsigned n) {
  BigInt d = 1;
  for (unsigned i = 1; i <= n; ++i) d = d * i + ((i & 1u) ? -1 : 1);
  return d;
}

namespace {

// Kuhn's augmenting paths over the allowed (zero) cells, randomized by
// shuffling the row order and each row's candidate list.
bool random_matching(const std::vector<std::vector<bool>>& used, Rng& rng, std::vector<int>& match_col) {
  const int n = static_cast<int>(used.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c)
      if (!used[r][c]) adj[r].push_back(c);
    for (std::size_t i = adj[r].size(); i > 1; --i) std::swap(adj[r][i - 1], adj[r][uniform_below(rng, i)]);
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);

  std::vector<int> row_of(static_cast<std::size_t>(n), -1);
  std::vector<int> visited(static_cast<std::size_t>(n), -1);
  auto augment = [&](auto&& self, int r, int stamp) -> bool {
    for (int c : adj[r]) {
      if (visited[c] == stamp) continue;
      visited[c] = stamp;
      if (row_of[c] < 0 || self(self, row_of[c], stamp)) {
        row_of[c] = r;
        return true;
      }
    }
    return false;
  };
  for (int i = 0; i < n; ++i)
    if (!augment(augment, order[i], i)) return false;
  match_col.assign(static_cast<std::size_t>(n), -1);
  for (int c = 0; c < n; ++c) match_col[row_of[c]] = c;
  return true;
}

}  // namespace

RegularZeroOne sample_regular(int n, int k, std::uint64_t seed) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("sample_regular needs 0 <= k <= n");
  constexpr int kAttempts = 16;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(attempt)));
    std::vector<std::vector<bool>> used(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    bool ok = true;
    for (int layer = 0; layer < k && ok; ++layer) {
      std::vector<int> match;
      ok = random_matching(used, rng, match);
      if (ok)
        for (int r = 0; r < n; ++r) used[r][match[r]] = true;
    }
    if (!ok) continue;
    IntMatrix m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = used[r][c] ? 1 : 0;
    return RegularZeroOne(std::move(m));
  }
  throw std::runtime_error("sample_regular failed after bounded retries");
}

std::int64_t permanent_01(std::span<const std::uint64_t> row_masks, int n) {
  if (static_cast<int>(row_masks.size()) != n || n > 20) throw std::invalid_argument("permanent_01 needs n <= 20 rows");
  if (n == 0) return 1;
  // Wrapping arithmetic: intermediate products overflow, but per <= n! < 2^63.
  std::uint64_t total = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t cols = 1; cols < count; ++cols) {
    std::uint64_t prod = 1;
    for (int i = 0; i < n && prod; ++i) prod *= static_cast<std::uint64_t>(std::popcount(row_masks[i] & cols));
    if ((n - std::popcount(cols)) & 1)
      total -= prod;
    else
      total += prod;
  }
  return static_cast<std::int64_t>(total);
}

}  // namespace lparity

// Compiled with -mavx2 -mfma on x86-64 only; see src/CMakeLists.txt.

#include <immintrin.h>

#include <bit>
#include <cmath>
#include <stdexcept>

#include "lparity/kernels/ryser.hpp"

namespace lparity::kernels {

namespace {

// Reduce x modulo m into roughly [-m/2, m/2]. Exact provided |x| < 2^52:
// the quotient may be off by one, but fnmadd computes x - q*m without rounding.
inline __m256d reduce(__m256d x, __m256d m, __m256d minv) {
  const __m256d q = _mm256_round_pd(_mm256_mul_pd(x, minv), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  return _mm256_fnmadd_pd(q, m, x);
}

}  // namespace

void ryser_sweep_avx2(const RyserProblem& p, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint32_t> out) {
  const int n = p.n;
  const int lanes = p.lanes();
  const int groups = lanes / kLaneWidth;
  if (static_cast<int>(out.size()) != lanes) throw std::invalid_argument("output size must equal lane count");
  if (lanes % kLaneWidth != 0) throw std::invalid_argument("lane count must be a multiple of 4");
  if (begin == 0) throw std::invalid_argument("subset range starts at 1");

  std::vector<__m256d> modulus(static_cast<std::size_t>(groups));
  std::vector<__m256d> inverse(static_cast<std::size_t>(groups));
  for (int g = 0; g < groups; ++g) {
    alignas(32) double m[kLaneWidth], mi[kLaneWidth];
    for (int l = 0; l < kLaneWidth; ++l) {
      m[l] = static_cast<double>(p.moduli[static_cast<std::size_t>(g) * kLaneWidth + l]);
      mi[l] = 1.0 / m[l];
    }
    modulus[g] = _mm256_load_pd(m);
    inverse[g] = _mm256_load_pd(mi);
  }

  // [col][row][group] as packed doubles.
  std::vector<__m256d> column(static_cast<std::size_t>(n) * n * groups);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      for (int g = 0; g < groups; ++g) {
        alignas(32) double e[kLaneWidth];
        for (int l = 0; l < kLaneWidth; ++l)
          e[l] = static_cast<double>(p.entries[(static_cast<std::size_t>(j) * n + i) * lanes + g * kLaneWidth + l]);
        column[(static_cast<std::size_t>(j) * n + i) * groups + g] = _mm256_load_pd(e);
      }

  std::vector<__m256d> rowsum(static_cast<std::size_t>(n) * groups, _mm256_setzero_pd());
  std::vector<__m256d> total(static_cast<std::size_t>(groups), _mm256_setzero_pd());

  const std::uint64_t seed_gray = (begin - 1) ^ ((begin - 1) >> 1);
  for (int j = 0; j < n; ++j) {
    if (!((seed_gray >> j) & 1u)) continue;
    for (int i = 0; i < n; ++i)
      for (int g = 0; g < groups; ++g) {
        auto& r = rowsum[static_cast<std::size_t>(i) * groups + g];
        r = reduce(_mm256_add_pd(r, column[(static_cast<std::size_t>(j) * n + i) * groups + g]), modulus[g],
                   inverse[g]);
      }
  }

  for (std::uint64_t s = begin; s < end; ++s) {
    const int j = std::countr_zero(s);
    const std::uint64_t gray = s ^ (s >> 1);
    const bool added = (gray >> j) & 1u;
    const bool negative = ((n - std::popcount(gray)) & 1) != 0;
    const __m256d* col = &column[static_cast<std::size_t>(j) * n * groups];
    for (int g = 0; g < groups; ++g) {
      const __m256d m = modulus[g];
      const __m256d mi = inverse[g];
      __m256d prod = _mm256_set1_pd(1.0);
      for (int i = 0; i < n; ++i) {
        __m256d& r = rowsum[static_cast<std::size_t>(i) * groups + g];
        const __m256d e = col[static_cast<std::size_t>(i) * groups + g];
        r = reduce(added ? _mm256_add_pd(r, e) : _mm256_sub_pd(r, e), m, mi);
        prod = reduce(_mm256_mul_pd(prod, r), m, mi);
      }
      total[g] = reduce(negative ? _mm256_sub_pd(total[g], prod) : _mm256_add_pd(total[g], prod), m, mi);
    }
  }

  for (int g = 0; g < groups; ++g) {
    alignas(32) double t[kLaneWidth];
    _mm256_store_pd(t, total[g]);
    for (int l = 0; l < kLaneWidth; ++l) {
      const auto m = static_cast<std::int64_t>(p.moduli[static_cast<std::size_t>(g) * kLaneWidth + l]);
      std::int64_t v = static_cast<std::int64_t>(std::llround(t[l])) % m;
      if (v < 0) v += m;
      out[static_cast<std::size_t>(g) * kLaneWidth + l] = static_cast<std::uint32_t>(v);
    }
  }
}

}  // namespace lparity::kernels

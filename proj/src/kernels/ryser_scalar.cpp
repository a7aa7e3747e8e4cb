#include <bit>
#include <stdexcept>

#include "lparity/kernels/ryser.hpp"

namespace lparity::kernels {

// Reference implementation: residues kept in [0, m), exact integer remainders.
void ryser_sweep_scalar(const RyserProblem& p, std::uint64_t begin, std::uint64_t end,
                        std::span<std::uint32_t> out) {
  const int n = p.n;
  const int lanes = p.lanes();
  if (static_cast<int>(out.size()) != lanes) throw std::invalid_argument("output size must equal lane count");
  if (begin == 0) throw std::invalid_argument("subset range starts at 1");

  std::vector<std::uint64_t> rowsum(static_cast<std::size_t>(n) * lanes, 0);
  std::vector<std::uint64_t> total(static_cast<std::size_t>(lanes), 0);
  auto entry = [&](int col, int row, int lane) -> std::uint64_t {
    return p.entries[(static_cast<std::size_t>(col) * n + row) * lanes + lane];
  };

  const std::uint64_t seed_gray = (begin - 1) ^ ((begin - 1) >> 1);
  for (int j = 0; j < n; ++j) {
    if (!((seed_gray >> j) & 1u)) continue;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < lanes; ++l) {
        auto& r = rowsum[static_cast<std::size_t>(i) * lanes + l];
        r = (r + entry(j, i, l)) % p.moduli[l];
      }
  }

  for (std::uint64_t g = begin; g < end; ++g) {
    const int j = std::countr_zero(g);
    const std::uint64_t gray = g ^ (g >> 1);
    const bool added = (gray >> j) & 1u;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < lanes; ++l) {
        const std::uint64_t m = p.moduli[l];
        auto& r = rowsum[static_cast<std::size_t>(i) * lanes + l];
        r = added ? (r + entry(j, i, l)) % m : (r + m - entry(j, i, l)) % m;
      }
    const bool negative = ((n - std::popcount(gray)) & 1) != 0;
    for (int l = 0; l < lanes; ++l) {
      const std::uint64_t m = p.moduli[l];
      std::uint64_t prod = 1 % m;
      for (int i = 0; i < n; ++i) prod = prod * rowsum[static_cast<std::size_t>(i) * lanes + l] % m;
      total[l] = negative ? (total[l] + m - prod) % m : (total[l] + prod) % m;
    }
  }
  for (int l = 0; l < lanes; ++l) out[l] = static_cast<std::uint32_t>(total[l]);
}

}  // namespace lparity::kernels

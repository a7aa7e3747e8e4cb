#pragma once

// Multi-modular Ryser sweep.
//
// For subset indices g in [begin, end) with S_g = gray(g) = g ^ (g >> 1), the
// sweep accumulates
//
//     sum_g (-1)^(n - |S_g|) * prod_i sum_{j in S_g} a_ij     (mod m_k)
//
// independently for every modulus m_k. Moduli are grouped four to a lane
// group so one 256-bit register carries a whole group. Two implementations
// exist: a scalar reference using exact integer remainders, and an AVX2/FMA
// variant using double-precision mulmod. Both must return identical residues.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lparity::kernels {

inline constexpr int kLaneWidth = 4;
/// Moduli must be below this so a product of two reduced values is exact in a double.
inline constexpr std::uint32_t kMaxModulus = 1u << 25;

struct RyserProblem {
  int n = 0;
  /// Size is a multiple of kLaneWidth.
  std::vector<std::uint32_t> moduli;
  /// entries[(col * n + row) * lanes + lane] = a(row, col) mod moduli[lane], in [0, m).
  std::vector<std::uint32_t> entries;

  int lanes() const { return static_cast<int>(moduli.size()); }
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
/// Best available ISA, unless pinned with `force_isa` or LPARITY_KERNEL=scalar|avx2.
Isa active_isa();
void force_isa(std::optional<Isa> isa);

void ryser_sweep_scalar(const RyserProblem& p, std::uint64_t begin, std::uint64_t end,
                        std::span<std::uint32_t> out);
void ryser_sweep_avx2(const RyserProblem& p, std::uint64_t begin, std::uint64_t end,
                      std::span<std::uint32_t> out);

/// Dispatches to the requested (default: active) ISA. `out` has one residue per lane.
void ryser_sweep(const RyserProblem& p, std::uint64_t begin, std::uint64_t end,
                 std::span<std::uint32_t> out, Isa isa);
inline void ryser_sweep(const RyserProblem& p, std::uint64_t begin, std::uint64_t end,
                        std::span<std::uint32_t> out) {
  ryser_sweep(p, begin, end, out, active_isa());
}

/// Largest primes below kMaxModulus, descending.
std::span<const std::uint32_t> ryser_primes();

}  // namespace lparity::kernels

#pragma once

// Exact integer-matrix kernels: permanent (Ryser, Gray-code order), brute
// force permanent, determinant, even permanent, permanental minors, GF(2)
// nullity, derangement numbers and a Lambda_n^k sampler.

#include <cstdint>
#include <optional>
#include <span>

#include "lparity/integer.hpp"
#include "lparity/matrix.hpp"

namespace lparity {

struct ExecOptions {
  unsigned threads = 1;
};

/// Ryser's formula over Gray-code subset order. Exact for any integer entries.
BigInt permanent(const IntMatrix& a, const ExecOptions& exec = {});

/// per(a) mod m, 1 <= m. Avoids reconstructing the exact value.
std::uint64_t permanent_mod(const IntMatrix& a, std::uint64_t m, const ExecOptions& exec = {});

inline constexpr int kBruteForceMaxOrder = 9;
/// Direct sum over all n! permutations. n <= 9.
BigInt permanent_bruteforce(const IntMatrix& a);

/// Fraction-free (Bareiss) elimination.
BigInt determinant(const IntMatrix& a);

/// Sum over even permutations only, computed as (per + det) / 2.
BigInt even_permanent(const IntMatrix& a);

inline constexpr int kEvenPermanentOracleMaxOrder = 7;
/// Direct sum over the alternating group. n <= 7.
BigInt even_permanent_bruteforce(const IntMatrix& a);

/// per A(i|j).
BigInt permanental_minor(const IntMatrix& a, int row, int col);

int gf2_rank(const IntMatrix& a);
/// cols - rank over GF(2).
int gf2_nullity(const IntMatrix& a);

/// d_n via d_n = n d_{n-1} + (-1)^n, d_0 = 1.
BigInt derangement(unsigned n);

/// Sum of k disjoint random permutation matrices; each successive one is a
/// random perfect matching of the complement graph. Not uniform on Lambda_n^k.
RegularZeroOne sample_regular(int n, int k, std::uint64_t seed);

// Word-size fast paths used by the spectrum code.

/// Permanent of a 0-1 matrix given as row bitmasks over n <= 20 columns.
std::int64_t permanent_01(std::span<const std::uint64_t> row_masks, int n);
/// Exact determinant of a small integer matrix (row-major), or nullopt when an
/// intermediate leaves the 64-bit range.
std::optional<std::int64_t> determinant_i64(std::span<const std::int64_t> entries, int n);

}  // namespace lparity

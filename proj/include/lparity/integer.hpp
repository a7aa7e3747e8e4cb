#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace lparity {

using BigInt = boost::multiprecision::cpp_int;

/// Least nonnegative residue of `x` modulo `m` (m >= 1).
inline std::uint64_t mod_u64(const BigInt& x, std::uint64_t m) {
  BigInt r = x % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline std::int64_t mod_i64(std::int64_t x, std::int64_t m) {
  std::int64_t r = x % m;
  return r < 0 ? r + m : r;
}

inline bool is_even(const BigInt& x) { return !boost::multiprecision::bit_test(abs(x), 0); }

inline std::string to_string(const BigInt& x) { return x.str(); }

BigInt factorial(unsigned n);
BigInt binomial(long n, long k);  // zero outside 0 <= k <= n

using Rng = std::mt19937_64;

/// Unbiased draw from [0, bound). Independent of the standard library's
/// distribution implementations so seeded runs reproduce everywhere.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// splitmix64 finalizer; derives independent stream seeds from (seed, index).
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace lparity

#include <doctest.h>

#include <random>

#include "lparity/algebra.hpp"
#include "lparity/kernels/ryser.hpp"
#include "support.hpp"

using namespace lparity;

TEST_SUITE("algebra") {
  TEST_CASE("permanent matches the permutation sum") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
      const int n = 1 + trial % 7;
      const IntMatrix a = random_matrix(rng, n, -9, 9);
      const auto rows = to_rows(a);
      CHECK(permanent(a) == oracle::permanent(rows));
      CHECK(permanent_bruteforce(a) == oracle::permanent(rows));
      CHECK(determinant(a) == oracle::determinant(rows));
    }
  }

  TEST_CASE("large entries take the multi-modular path") {
    std::mt19937_64 rng(7);
    for (int n = 2; n <= 7; ++n) {
      const IntMatrix a = random_matrix(rng, n, -1'000'000'000'000LL, 1'000'000'000'000LL);
      CHECK(permanent(a) == oracle::permanent(to_rows(a)));
    }
  }

  TEST_CASE("permanent residues") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const IntMatrix a = random_matrix(rng, 2 + trial % 6, -50, 50);
      const auto exact = oracle::permanent(to_rows(a));
      for (std::uint64_t m : {2u, 3u, 4u, 6u, 63u, 1000003u}) {
        oracle::Big r = exact % m;
        if (r < 0) r += m;
        CHECK(permanent_mod(a, m) == static_cast<std::uint64_t>(r));
      }
    }
  }

  TEST_CASE("known permanents") {
    CHECK(permanent(IntMatrix::ones(20, 20)) == factorial(20));
    CHECK(permanent(IntMatrix::identity(9)) == 1);
    CHECK(permanent(IntMatrix(0, 0)) == 1);
    IntMatrix d = IntMatrix::ones(10, 10) - IntMatrix::identity(10);
    CHECK(permanent(d) == oracle::derangement(10));
  }

  TEST_CASE("threaded permanent equals single-threaded") {
    std::mt19937_64 rng(9);
    const IntMatrix a = random_matrix(rng, 14, 0, 1);
    CHECK(permanent(a, {4}) == permanent(a, {1}));
    const IntMatrix b = random_matrix(rng, 12, -3000000, 3000000);
    CHECK(permanent(b, {3}) == permanent(b, {1}));
  }

  TEST_CASE("0-1 permanent from row masks") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
      const int n = 1 + trial % 8;
      const IntMatrix a = random_matrix(rng, n, 0, 1);
      std::vector<std::uint64_t> masks(n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (a(i, j) != 0) masks[i] |= std::uint64_t{1} << j;
      CHECK(permanent_01(masks, n) == static_cast<std::int64_t>(oracle::permanent(to_rows(a))));
    }
  }

  TEST_CASE("even permanent counts even permutations") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
      const IntMatrix a = random_matrix(rng, 1 + trial % 6, -4, 4);
      const auto rows = to_rows(a);
      const oracle::Big expected = (oracle::permanent(rows) + oracle::determinant(rows)) / 2;
      CHECK(even_permanent(a) == expected);
      CHECK(even_permanent_bruteforce(a) == expected);
    }
  }

  TEST_CASE("GF(2) rank and nullity") {
    CHECK(gf2_rank(IntMatrix::identity(5)) == 5);
    CHECK(gf2_nullity(IntMatrix::ones(4, 4)) == 3);
    CHECK(gf2_nullity(IntMatrix{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}) == 1);
    CHECK(gf2_rank(IntMatrix{{2, 4}, {6, 3}}) == 1);
  }

  TEST_CASE("derangements") {
    for (unsigned n = 0; n <= 20; ++n) CHECK(derangement(n) == oracle::derangement(n));
  }

  TEST_CASE("binomials and factorials") {
    CHECK(binomial(10, 3) == 120);
    CHECK(binomial(5, 7) == 0);
    CHECK(binomial(5, -1) == 0);
    CHECK(factorial(0) == 1);
    CHECK(factorial(12) == 479001600);
  }

  TEST_CASE("regular 0-1 sampler") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{5, 2}, {7, 6}, {7, 4}, {8, 3}, {6, 0}, {6, 6}}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const RegularZeroOne a = sample_regular(n, k, seed);
        CHECK(a.order() == n);
        CHECK(a.degree() == k);
        CHECK(a.matrix().is_zero_one());
        for (const auto& s : a.matrix().row_sums()) CHECK(s == k);
        for (const auto& s : a.matrix().column_sums()) CHECK(s == k);
      }
      CHECK(sample_regular(n, k, 42).matrix() == sample_regular(n, k, 42).matrix());
    }
    CHECK_THROWS(RegularZeroOne(IntMatrix{{1, 1}, {0, 1}}));
    CHECK(regular_degree(IntMatrix{{1, 0}, {0, 1}}) == 1);
    CHECK_FALSE(regular_degree(IntMatrix{{1, 1}, {0, 1}}).has_value());
  }

  TEST_CASE("permanental minors") {
    std::mt19937_64 rng(23);
    const IntMatrix a = random_matrix(rng, 5, -3, 3);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) CHECK(permanental_minor(a, i, j) == oracle::permanent(to_rows(a.minor(i, j))));
  }

  TEST_CASE("matrix text format") {
    const IntMatrix a{{1, -2}, {3, 4}, {5, 6}};
    CHECK(parse_matrix(to_text(a)) == a);
    CHECK_THROWS(parse_matrix("2 2\n1 2\n3\n"));
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("scalar and AVX2 sweeps agree") {
    using namespace lparity::kernels;
    if (!isa_available(Isa::avx2)) {
      MESSAGE("AVX2 not available on this machine; comparing scalar with itself");
    }
    std::mt19937_64 rng(31);
    const auto primes = ryser_primes();
    REQUIRE(primes.size() >= 8);
    for (std::uint32_t p : primes.subspan(0, 8)) CHECK(p < kMaxModulus);
    for (int trial = 0; trial < 40; ++trial) {
      RyserProblem prob;
      prob.n = 1 + trial % 14;
      const int lanes = kLaneWidth * (1 + trial % 2);
      for (int l = 0; l < lanes; ++l) prob.moduli.push_back(l % 3 == 2 ? 2u + static_cast<std::uint32_t>(rng() % 97) : primes[l]);
      prob.entries.resize(static_cast<std::size_t>(prob.n) * prob.n * lanes);
      for (std::size_t i = 0; i < prob.entries.size(); ++i) prob.entries[i] = rng() % prob.moduli[i % lanes];
      const std::uint64_t full = std::uint64_t{1} << prob.n;
      const std::uint64_t begin = 1 + rng() % full;
      const std::uint64_t end = begin + rng() % (full - begin + 1);
      std::vector<std::uint32_t> a(lanes), b(lanes);
      ryser_sweep_scalar(prob, begin, end, a);
      const Isa other = isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
      ryser_sweep(prob, begin, end, b, other);
      CHECK(a == b);
    }
  }

  TEST_CASE("forcing the ISA leaves results unchanged") {
    using namespace lparity::kernels;
    std::mt19937_64 rng(37);
    const IntMatrix a = random_matrix(rng, 13, -5'000'000, 5'000'000);
    force_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    const BigInt scalar = permanent(a);
    force_isa(std::nullopt);
    CHECK(permanent(a) == scalar);
    if (isa_available(Isa::avx2)) {
      force_isa(Isa::avx2);
      CHECK(permanent(a) == scalar);
      force_isa(std::nullopt);
    }
    CHECK(isa_name(Isa::scalar) == "scalar");
  }
}

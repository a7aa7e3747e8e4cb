#include <doctest.h>

#include <numeric>

#include "lparity/search.hpp"
#include "lparity/spectrum.hpp"
#include "support.hpp"

using namespace lparity;

namespace {

std::vector<LatinSquare> sample_squares() {
  std::vector<LatinSquare> out;
  for (int n = 1; n <= 7; ++n)
    for (std::uint64_t s = 0; s < 3; ++s) out.push_back(random_square(n, 100 * n + s));
  out.push_back(LatinSquare::cyclic(4));
  out.push_back(LatinSquare::cyclic(6));
  return out;
}

// N_r straight from its definition: weight n-1 diagonals on which the row-r
// symbol occurs twice.
std::vector<std::uint64_t> n_oracle(const oracle::Grid& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::uint64_t> N(n, 0);
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<int> count(n, 0);
    int distinct = 0;
    for (int i = 0; i < n; ++i)
      if (count[g[i][p[i]]]++ == 0) ++distinct;
    if (distinct != n - 1) continue;
    for (int r = 0; r < n; ++r)
      if (count[g[r][p[r]]] == 2) ++N[r];
  } while (std::next_permutation(p.begin(), p.end()));
  return N;
}

}  // namespace

TEST_SUITE("spectrum") {
  TEST_CASE("spectra match the permutation census") {
    for (const auto& l : sample_squares()) {
      const int n = l.order();
      const auto c = oracle::census(to_grid(l));
      const auto e = spectrum_enumerate(l);
      const auto ev = ev_spectrum(l);
      REQUIRE(e.counts.size() == static_cast<std::size_t>(n));
      for (int m = 1; m <= n; ++m) {
        CHECK(e.E(m) == c.E[m]);
        CHECK(ev.E(m) == c.Eev[m]);
      }
      CHECK(e.total() == factorial(n));
      CHECK(count_transversals(l) == c.E[n]);
      CHECK(signed_count(l) == c.signed_transversals);
      CHECK(signed_count_via_det(l) == c.signed_transversals);

      const auto census = diagonal_census(l, {2});
      CHECK(census.plain == e);
      CHECK(census.even == ev);
    }
  }

  TEST_CASE("R sequence is the binomial transform of the spectrum") {
    for (const auto& l : sample_squares()) {
      const int n = l.order();
      const auto c = oracle::census(to_grid(l));
      const auto r = r_sequence(l);
      const auto rev = r_sequence(l, PermanentMode::even_per);
      for (int k = 1; k <= n; ++k) {
        oracle::Big expected = 0, expected_ev = 0;
        for (int m = 1; m <= k; ++m) {
          expected += oracle::binom(n - m, k - m) * c.E[m];
          expected_ev += oracle::binom(n - m, k - m) * c.Eev[m];
        }
        CHECK(r.R(k) == expected);
        CHECK(rev.R(k) == expected_ev);
      }
      CHECK(spectrum_from_r(r) == spectrum_enumerate(l));
      if (n >= 2) CHECK(r2_cycle_formula(l) == r.R(2));
    }
  }

  TEST_CASE("angle evaluation is a permanent of the indicator matrix") {
    const LatinSquare l = random_square(5, 8);
    for (std::uint64_t mask = 0; mask < 32; ++mask) {
      const IntMatrix a = indicator_matrix(l, mask);
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(a(i, j) == (((mask >> l(i, j)) & 1u) ? 1 : 0));
      const auto rows = to_rows(a);
      CHECK(angle_eval(l, mask, PermanentMode::per) == oracle::permanent(rows));
      CHECK(angle_eval(l, mask, PermanentMode::det) == oracle::determinant(rows));
    }
  }

  TEST_CASE("parity types classify every transversal") {
    for (const auto& l : sample_squares()) {
      const int n = l.order();
      const auto c = oracle::census(to_grid(l));
      ParityTypeCounts expected;
      for (const auto& sigma : c.transversals) {
        std::vector<int> col_to_sym(n), sym_to_row(n);
        for (int r = 0; r < n; ++r) {
          col_to_sym[sigma[r]] = l(r, sigma[r]);
          sym_to_row[l(r, sigma[r])] = r;
        }
        const int bits = oracle::parity(sigma) << 2 | oracle::parity(col_to_sym) << 1 | oracle::parity(sym_to_row);
        switch (bits) {
          case 0b000: ++expected.w; break;
          case 0b011: ++expected.x; break;
          case 0b101: ++expected.y; break;
          case 0b110: ++expected.z; break;
          default: FAIL("parity pattern with odd sum " << bits);
        }
      }
      CHECK(parity_type_counts(l) == expected);
    }
  }

  TEST_CASE("depleted counts and N_r") {
    for (const auto& l : sample_squares()) {
      const int n = l.order();
      if (n < 2) continue;
      const auto g = to_grid(l);
      const auto dc = depleted_counts(l, NrMethod::enumerate);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(dc.t[i][j] == oracle::transversals(oracle::remove(g, i, j)));
      CHECK(dc.N == n_oracle(g));
      CHECK(depleted_counts(l, NrMethod::identity).N == dc.N);
      CHECK(depleted_transversals(l) == dc.t);
      const auto e = spectrum_enumerate(l);
      CHECK(e_n_minus_1_from_depleted(dc.t, count_transversals(l)) == e.E(n - 1));
    }
  }

  TEST_CASE("counting on row-Latin squares and arrays") {
    const RowLatinSquare rl = RowLatinSquare::from_rows({{1, 2, 3}, {1, 2, 3}, {2, 3, 1}});
    CHECK(count_transversals(rl) == oracle::transversals(to_grid(rl.grid())));
    const auto arr = std::get<LatinArray>(parse_square("2 3 4\n1 2 3\n2 3 4\n").value);
    CHECK(count_transversals(arr) == oracle::transversals(to_grid(arr.grid())));
    CHECK(count_transversals(std::get<LatinArray>(parse_square("0 0 0\n").value)) == 1);
  }

  TEST_CASE("small known values") {
    const auto z3 = LatinSquare::cyclic(3);
    const auto e = spectrum_enumerate(z3);
    CHECK(e.E(1) == 3);
    CHECK(e.E(2) == 0);
    CHECK(e.E(3) == 3);
    CHECK(count_transversals(LatinSquare::cyclic(4)) == 0);
    CHECK(count_transversals(LatinSquare::cyclic(5)) == 15);
    CHECK(count_transversals(LatinSquare::cyclic(7)) == 133);
  }

  TEST_CASE("cost guards") {
    const LatinSquare big = random_square(12, 1);
    CHECK_THROWS_AS(spectrum_enumerate(big), CostGuardError);
    CHECK_THROWS_AS(depleted_counts(big, NrMethod::enumerate), CostGuardError);
    CHECK_THROWS_AS(r_sequence(random_square(14, 1)), CostGuardError);
  }

  TEST_CASE("report JSON carries exact integers") {
    SpectrumReport rep;
    rep.order = 3;
    rep.E = spectrum_enumerate(LatinSquare::cyclic(3));
    rep.transversals = 3;
    const auto j = to_json(rep);
    CHECK(j["order"] == 3);
    CHECK(j["transversals"] == 3);
    CHECK(j["E"].size() == 3);
    CHECK(to_json(factorial(25)).dump() == "\"15511210043330985984000000\"");
  }
}

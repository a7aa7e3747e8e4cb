#include <doctest.h>

#include <map>
#include <set>

#include "lparity/search.hpp"
#include "lparity/spectrum.hpp"
#include "support.hpp"

using namespace lparity;

TEST_SUITE("search") {
  TEST_CASE("reduced squares of small order") {
    const std::uint64_t expected[] = {1, 1, 1, 4, 56, 9408};
    for (int n = 1; n <= 6; ++n) CHECK(count_reduced(n) == expected[n - 1]);

    const auto five = exhaustive_reduced(5);
    std::set<std::vector<Symbol>> distinct;
    for (const auto& l : five) {
      CHECK(oracle::is_latin(to_grid(l)));
      for (int i = 0; i < 5; ++i) {
        CHECK(l(0, i) == i);
        CHECK(l(i, 0) == i);
      }
      distinct.insert(l.grid().cells());
    }
    CHECK(distinct.size() == 56);
    CHECK(std::is_sorted(five.begin(), five.end(),
                         [](const LatinSquare& a, const LatinSquare& b) { return a.grid().cells() < b.grid().cells(); }));
    CHECK_THROWS_AS(for_each_reduced(8, [](const LatinSquare&) { return true; }), CostGuardError);
  }

  TEST_CASE("random squares are Latin and seed-reproducible") {
    for (int n : {1, 2, 5, 8, 13, 20}) {
      for (std::uint64_t seed = 0; seed < 4; ++seed) {
        const LatinSquare l = random_square(n, seed);
        CHECK(oracle::is_latin(to_grid(l)));
        CHECK(random_square(n, seed) == l);
      }
    }
    CHECK(random_square(9, 1) != random_square(9, 2));
    const auto corpus = random_corpus(6, 5, 77);
    REQUIRE(corpus.size() == 5);
    for (std::size_t i = 0; i < corpus.size(); ++i) CHECK(corpus[i] == random_square(6, mix_seed(77, i)));
  }

  TEST_CASE("random order-3 squares are roughly uniform") {
    // 12 Latin squares of order 3; chi-square with 11 degrees of freedom.
    std::map<std::vector<Symbol>, int> hist;
    const int draws = 2400;
    for (int i = 0; i < draws; ++i) ++hist[random_square(3, mix_seed(5, i)).grid().cells()];
    CHECK(hist.size() == 12);
    double chi = 0;
    const double expect = draws / 12.0;
    for (const auto& [cells, count] : hist) chi += (count - expect) * (count - expect) / expect;
    CHECK(chi < 31.3);  // p = 0.001
  }

  TEST_CASE("residue exclusions") {
    CHECK(residue_exclusion(10, 2, 4).has_value());
    CHECK(residue_exclusion(10, 1, 2).has_value());
    CHECK(residue_exclusion(8, 1, 2).has_value());
    CHECK_FALSE(residue_exclusion(8, 2, 4).has_value());
    CHECK_FALSE(residue_exclusion(9, 1, 2).has_value());
    CHECK_FALSE(residue_exclusion(10, 4, 8).has_value());
    CHECK(residue_exclusion(10, 6, 8).has_value());

    const auto r = residue_search(fixture_square("order10"), 1, 4, {1000, 1});
    CHECK(r.status == SearchStatus::excluded);
    CHECK_FALSE(r.found.has_value());
    CHECK(r.steps == 0);
  }

  TEST_CASE("residue search hits are replayable") {
    const LatinSquare start = fixture_square("order9");
    for (int k = 0; k < 5; ++k) {
      const auto r = residue_search(start, k, 5, {200000, 7});
      REQUIRE(r.status == SearchStatus::found);
      REQUIRE(r.found.has_value());
      const auto count = oracle::transversals(to_grid(*r.found));
      CHECK(count == r.transversals);
      CHECK(static_cast<int>(count % 5) == k);
      CHECK(replay(start, r.turns) == *r.found);
      CHECK(oracle::is_latin(to_grid(*r.found)));
      const auto j = to_json(r);
      CHECK(j["status"] == "found");
      CHECK(j["transversals"] == count);
    }
    const auto a = residue_search(start, 3, 7, {100000, 99});
    const auto b = residue_search(start, 3, 7, {100000, 99});
    CHECK(a.turns == b.turns);
    CHECK(a.steps == b.steps);
  }

  TEST_CASE("a search that cannot succeed exhausts its budget") {
    // Order 4 squares have 0 or 8 transversals.
    const auto r = residue_search(LatinSquare::cyclic(4), 1, 3, {2000, 3});
    CHECK(r.status == SearchStatus::exhausted);
    CHECK(r.steps == 2000);
  }

  TEST_CASE("sixteen-class classification") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const LatinSquare l = random_square(6, seed);
      const auto g = to_grid(l);
      const auto c = oracle::census(g);
      const auto w = classify(l);
      const auto p = square_parities(l);
      CHECK(w.e_n_minus_1 == c.E[5]);
      CHECK(w.pi_r == p.row);
      CHECK(w.pi_c == p.column);
      CHECK(w.w == parity_type_counts(l).w);
      CHECK(w.index == ((w.w & 1) | ((c.E[5] / 2) & 1) << 1 | p.row << 2 | p.column << 3));
    }
    CHECK(class_index(1, 2, 1, 1) == 15);
    CHECK(class_index(0, 4, 0, 1) == 8);
    CHECK_THROWS(sixteen_class_search(7, 1, 10));
  }

  TEST_CASE("fixtures") {
    CHECK(fixtures().size() == 6);
    CHECK(count_transversals(fixture_square("order9")) == 218);
    CHECK(count_transversals(fixture_square("order10")) == 888);
    CHECK(count_transversals(fixture_square("L5")) == 3);
    CHECK(count_transversals(fixture("rowlatin2").grid) == 2);
    CHECK(count_transversals(fixture("rowlatin6").grid) == 6);
    for (const auto& f : fixtures()) CHECK(f.grid.rows_repeat_free());
    CHECK_THROWS(fixture("nope"));
    CHECK_THROWS(fixture_square("rowlatin6"));
  }
}

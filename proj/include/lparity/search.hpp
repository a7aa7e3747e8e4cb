#pragma once

// Square generators (exhaustive reduced squares, Jacobson-Matthews random
// squares), the intercalate-turning residue search, the sixteen-class
// sampling experiment, and the built-in fixture squares.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "lparity/latin.hpp"

namespace lparity {

inline constexpr int kExhaustiveMaxOrder = 7;

/// Visits every reduced square of order n (first row and column in natural
/// order) exactly once, in row-major lexicographic order. Returning false from
/// `visit` stops the walk. n <= 7.
void for_each_reduced(int n, const std::function<bool(const LatinSquare&)>& visit);
std::vector<LatinSquare> exhaustive_reduced(int n);
std::uint64_t count_reduced(int n);

struct RandomSquareConfig {
  long burn_in = -1;  // moves; -1 means 10 n^3
};

/// Jacobson-Matthews walk from the cyclic square. Seed-reproducible.
LatinSquare random_square(int n, std::uint64_t seed, const RandomSquareConfig& cfg = {});
/// Square i uses seed mix_seed(seed, i).
std::vector<LatinSquare> random_corpus(int n, std::size_t count, std::uint64_t seed,
                                       const RandomSquareConfig& cfg = {});

struct ResidueSearchConfig {
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t stagnation = 0;  // steps without a new residue before restart; 0 means budget / 10
};

enum class SearchStatus { found, exhausted, excluded };
std::string_view status_name(SearchStatus s);

struct SearchResult {
  int k = 0;
  int m = 0;
  SearchStatus status = SearchStatus::exhausted;
  std::optional<LatinSquare> found;
  std::vector<Intercalate> turns;  // applied to the start square, in order
  std::uint64_t transversals = 0;
  std::uint64_t steps = 0;
  std::uint64_t restarts = 0;
  std::string exclusion;
};

/// Reason no Latin square of order n can have k mod m transversals, if one of
/// the parity theorems rules it out.
std::optional<std::string> residue_exclusion(int n, int k, int m);

SearchResult residue_search(const LatinSquare& start, int k, int m, const ResidueSearchConfig& cfg);
LatinSquare replay(const LatinSquare& start, const std::vector<Intercalate>& turns);
nlohmann::json to_json(const SearchResult& r);

/// (w, E_{n-1}/2, pi_r, pi_c) mod 2 packed as w | e << 1 | pi_r << 2 | pi_c << 3.
struct ClassWitness {
  int index = 0;
  LatinSquare square;
  std::uint64_t w = 0;
  std::uint64_t e_n_minus_1 = 0;
  int pi_r = 0;
  int pi_c = 0;
  std::uint64_t sample = 0;
};
int class_index(std::uint64_t w, std::uint64_t e_n_minus_1, int pi_r, int pi_c);
ClassWitness classify(const LatinSquare& l);

struct SixteenClassResult {
  int order = 0;
  std::array<std::optional<ClassWitness>, 16> witnesses;
  std::uint64_t samples = 0;

  int covered() const;
};
/// Samples random squares until every class is witnessed or `budget` squares
/// have been drawn. Even orders only.
SixteenClassResult sixteen_class_search(int n, std::uint64_t seed, std::uint64_t budget,
                                        const RandomSquareConfig& cfg = {});

struct Fixture {
  std::string name;
  SymbolGrid grid;
};
/// order9, order10, order11, L5, rowlatin2, rowlatin6.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(std::string_view name);
LatinSquare fixture_square(std::string_view name);

}  // namespace lparity

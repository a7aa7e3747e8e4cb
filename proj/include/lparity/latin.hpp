#pragma once

// Latin structures: symbol grids, Latin squares, row-Latin squares and Latin
// arrays, plus conjugation, intercalates, and the parity bookkeeping used for
// transversals.
//
// Rows, columns and symbols are 0-based everywhere in this API; the `.lsq`
// text format and all JSON output are 1-based.

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lparity {

using Symbol = std::uint8_t;
inline constexpr int kMaxOrder = 64;

/// Dense rows x cols grid over the symbol universe {0..symbols-1}. No Latin
/// property is implied; the wrappers below add and enforce those.
class SymbolGrid {
 public:
  SymbolGrid() = default;
  SymbolGrid(int rows, int cols, int symbols);
  SymbolGrid(int rows, int cols, int symbols, std::vector<Symbol> cells);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int symbols() const { return symbols_; }
  bool square() const { return rows_ == cols_; }

  Symbol operator()(int r, int c) const { return cells_[static_cast<std::size_t>(r) * cols_ + c]; }
  void set(int r, int c, Symbol s) { cells_[static_cast<std::size_t>(r) * cols_ + c] = s; }
  std::span<const Symbol> row(int r) const {
    return {cells_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
  }
  const std::vector<Symbol>& cells() const { return cells_; }

  bool rows_repeat_free() const;
  bool columns_repeat_free() const;

  SymbolGrid transposed() const;
  /// Copy with one row and/or column removed; pass -1 to keep all of them.
  SymbolGrid without(int row, int col) const;

  std::uint64_t hash() const;

  friend bool operator==(const SymbolGrid&, const SymbolGrid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  int symbols_ = 0;
  std::vector<Symbol> cells_;
};

/// No symbol repeated in any row or any column.
class LatinArray {
 public:
  LatinArray() = default;
  explicit LatinArray(SymbolGrid grid);

  int rows() const { return grid_.rows(); }
  int cols() const { return grid_.cols(); }
  int symbols() const { return grid_.symbols(); }
  Symbol operator()(int r, int c) const { return grid_(r, c); }
  const SymbolGrid& grid() const { return grid_; }

  friend bool operator==(const LatinArray&, const LatinArray&) = default;

 private:
  SymbolGrid grid_;
};

/// n x n, every row a permutation of the n symbols. Columns unconstrained.
class RowLatinSquare {
 public:
  RowLatinSquare() = default;
  explicit RowLatinSquare(SymbolGrid grid);
  static RowLatinSquare from_rows(const std::vector<std::vector<int>>& one_based);

  int order() const { return grid_.rows(); }
  Symbol operator()(int r, int c) const { return grid_(r, c); }
  const SymbolGrid& grid() const { return grid_; }

  friend bool operator==(const RowLatinSquare&, const RowLatinSquare&) = default;

 private:
  SymbolGrid grid_;
};

class LatinSquare {
 public:
  LatinSquare() = default;
  explicit LatinSquare(SymbolGrid grid);
  static LatinSquare from_rows(const std::vector<std::vector<int>>& one_based);
  /// Cayley table of Z_n: cell (r, c) holds r + c mod n.
  static LatinSquare cyclic(int n);

  int order() const { return grid_.rows(); }
  Symbol operator()(int r, int c) const { return grid_(r, c); }
  const SymbolGrid& grid() const { return grid_; }

  RowLatinSquare as_row_latin() const { return RowLatinSquare(grid_); }
  LatinArray as_array() const { return LatinArray(grid_); }

  friend bool operator==(const LatinSquare&, const LatinSquare&) = default;

 private:
  SymbolGrid grid_;
};

// ---------------------------------------------------------------------------
// .lsq text format

struct ParseError : std::runtime_error {
  ParseError(int line, int column, const std::string& what);
  int line;
  int column;
  std::string reason;  // the message without the position prefix
};

enum class StructureKind { latin_square, row_latin_square, latin_array };

std::string_view kind_name(StructureKind kind);

struct ParsedStructure {
  std::variant<LatinSquare, RowLatinSquare, LatinArray> value;
  StructureKind kind;
  bool rows_latin;     // every row a permutation of the symbol set
  bool columns_latin;  // every column a permutation of the symbol set

  const SymbolGrid& grid() const;
};

/// Parses `n` followed by n rows (square; Latin or row-Latin), or `m k n`
/// followed by m rows of k symbols (Latin array; promoted to a Latin square
/// when m = k = n). Symbols are 1-based in the text.
ParsedStructure parse_square(std::string_view text);
ParsedStructure read_square_file(const std::filesystem::path& path);

/// Header `n` for square grids over n symbols, `m k n` otherwise.
std::string to_lsq(const SymbolGrid& grid);
inline std::string to_lsq(const LatinSquare& l) { return to_lsq(l.grid()); }

// ---------------------------------------------------------------------------
// Conjugates

/// Element of S_3 in image notation; `Conjugacy{3,1,2}` is the 312-conjugate.
/// The coordinate in position i of every entry (row, column, symbol) moves to
/// position image(i).
class Conjugacy {
 public:
  constexpr Conjugacy() : image_{1, 2, 3} {}
  Conjugacy(int a, int b, int c);
  static Conjugacy parse(std::string_view text);
  static std::array<Conjugacy, 6> all();

  int image(int position) const { return image_[position - 1]; }
  /// (h * g) applies g first, then h.
  friend Conjugacy operator*(const Conjugacy& h, const Conjugacy& g);
  Conjugacy inverse() const;
  std::string str() const;

  friend bool operator==(const Conjugacy&, const Conjugacy&) = default;

 private:
  std::array<int, 3> image_;
};

LatinSquare conjugate(const LatinSquare& l, const Conjugacy& g);

/// L(i|j): the (n-1) x (n-1) Latin array over n symbols.
LatinArray remove_row_column(const LatinSquare& l, int row, int col);

// ---------------------------------------------------------------------------
// Diagonals and parity

/// Row -> column bijection.
class Diagonal {
 public:
  explicit Diagonal(std::vector<Symbol> column_of_row);
  static Diagonal identity(int n);

  int size() const { return static_cast<int>(columns_.size()); }
  int column(int row) const { return columns_[row]; }
  std::span<const Symbol> columns() const { return columns_; }

 private:
  std::vector<Symbol> columns_;
};

/// Number of distinct symbols on the diagonal.
int weight(const SymbolGrid& grid, const Diagonal& d);

/// Z_2 parity of a permutation of {0..n-1}: (n - #cycles) mod 2.
template <typename T>
int permutation_parity(std::span<const T> perm) {
  const std::size_t n = perm.size();
  std::vector<bool> seen(n, false);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
  }
  return static_cast<int>((n - cycles) & 1u);
}

struct TransversalParities {
  int row = 0;     // epsilon(sigma_r), sigma_r : row -> column
  int column = 0;  // epsilon(sigma_c), sigma_c : column -> symbol
  int symbol = 0;  // epsilon(sigma_s), sigma_s : symbol -> row

  friend bool operator==(const TransversalParities&, const TransversalParities&) = default;
};

/// Throws std::invalid_argument if `d` is not a transversal of `l`.
TransversalParities transversal_parities(const LatinSquare& l, const Diagonal& d);

struct SquareParities {
  int row = 0;     // sum of parities of the row permutations (column -> symbol)
  int column = 0;  // sum over columns (row -> symbol)
  int symbol = 0;  // sum over symbols of theta_s (row -> column holding s)
};

SquareParities square_parities(const LatinSquare& l);

/// theta_s for every symbol s: theta[s][r] = column of symbol s in row r.
std::vector<std::vector<Symbol>> symbol_permutations(const LatinSquare& l);

// ---------------------------------------------------------------------------
// Intercalates

/// Cells (r1,c1),(r2,c2) hold `a`, cells (r1,c2),(r2,c1) hold `b`; r1 < r2, c1 < c2.
struct Intercalate {
  int r1 = 0, r2 = 0, c1 = 0, c2 = 0;
  Symbol a = 0, b = 0;

  friend auto operator<=>(const Intercalate&, const Intercalate&) = default;
};

/// Every intercalate, ordered by (r1, r2, c1, c2).
std::vector<Intercalate> find_intercalates(const LatinSquare& l);
bool has_intercalate(const LatinSquare& l, const Intercalate& ic);
/// Swaps the two symbols of `ic`; throws std::invalid_argument if `ic` is absent.
LatinSquare turn_intercalate(const LatinSquare& l, const Intercalate& ic);

}  // namespace lparity

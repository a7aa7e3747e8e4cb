#include "lparity/latin.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace lparity {

namespace {

void check_dims(int rows, int cols, int symbols) {
  if (rows < 0 || cols < 0 || symbols < 0) throw std::invalid_argument("negative grid dimension");
  if (rows > kMaxOrder || cols > kMaxOrder || symbols > kMaxOrder)
    throw std::invalid_argument("grid dimension exceeds " + std::to_string(kMaxOrder));
}

bool line_is_permutation(const SymbolGrid& g, int index, bool by_row) {
  const int len = by_row ? g.cols() : g.rows();
  if (len != g.symbols()) return false;
  std::uint64_t seen = 0;
  for (int k = 0; k < len; ++k) {
    const Symbol s = by_row ? g(index, k) : g(k, index);
    seen |= std::uint64_t{1} << s;
  }
  return std::popcount(seen) == len;
}

bool all_rows_permutations(const SymbolGrid& g) {
  for (int r = 0; r < g.rows(); ++r)
    if (!line_is_permutation(g, r, true)) return false;
  return true;
}

bool all_columns_permutations(const SymbolGrid& g) {
  for (int c = 0; c < g.cols(); ++c)
    if (!line_is_permutation(g, c, false)) return false;
  return true;
}

SymbolGrid grid_from_rows(const std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<Symbol> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("grid is not square");
    for (int s : row) {
      if (s < 1 || s > n) throw std::invalid_argument("symbol out of range");
      cells.push_back(static_cast<Symbol>(s - 1));
    }
  }
  return SymbolGrid(n, n, n, std::move(cells));
}

}  // namespace

SymbolGrid::SymbolGrid(int rows, int cols, int symbols)
    : rows_(rows), cols_(cols), symbols_(symbols) {
  check_dims(rows, cols, symbols);
  cells_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

SymbolGrid::SymbolGrid(int rows, int cols, int symbols, std::vector<Symbol> cells)
    : rows_(rows), cols_(cols), symbols_(symbols), cells_(std::move(cells)) {
  check_dims(rows, cols, symbols);
  if (cells_.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("cell count does not match dimensions");
  for (Symbol s : cells_)
    if (s >= symbols) throw std::invalid_argument("symbol out of range");
}

bool SymbolGrid::rows_repeat_free() const {
  for (int r = 0; r < rows_; ++r) {
    std::uint64_t seen = 0;
    for (int c = 0; c < cols_; ++c) {
      const std::uint64_t bit = std::uint64_t{1} << (*this)(r, c);
      if (seen & bit) return false;
      seen |= bit;
    }
  }
  return true;
}

bool SymbolGrid::columns_repeat_free() const {
  for (int c = 0; c < cols_; ++c) {
    std::uint64_t seen = 0;
    for (int r = 0; r < rows_; ++r) {
      const std::uint64_t bit = std::uint64_t{1} << (*this)(r, c);
      if (seen & bit) return false;
      seen |= bit;
    }
  }
  return true;
}

SymbolGrid SymbolGrid::transposed() const {
  SymbolGrid t(cols_, rows_, symbols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.set(c, r, (*this)(r, c));
  return t;
}

SymbolGrid SymbolGrid::without(int row, int col) const {
  if (row >= rows_ || col >= cols_ || row < -1 || col < -1)
    throw std::out_of_range("row/column index out of range");
  const int nr = rows_ - (row >= 0 ? 1 : 0);
  const int nc = cols_ - (col >= 0 ? 1 : 0);
  std::vector<Symbol> cells;
  cells.reserve(static_cast<std::size_t>(nr) * nc);
  for (int r = 0; r < rows_; ++r) {
    if (r == row) continue;
    for (int c = 0; c < cols_; ++c) {
      if (c == col) continue;
      cells.push_back((*this)(r, c));
    }
  }
  return SymbolGrid(nr, nc, symbols_, std::move(cells));
}

std::uint64_t SymbolGrid::hash() const {
  // FNV-1a over dimensions and cells.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  mix(static_cast<std::uint64_t>(rows_));
  mix(static_cast<std::uint64_t>(cols_));
  mix(static_cast<std::uint64_t>(symbols_));
  for (Symbol s : cells_) mix(s);
  return h;
}

LatinArray::LatinArray(SymbolGrid grid) : grid_(std::move(grid)) {
  if (!grid_.rows_repeat_free()) throw std::invalid_argument("symbol repeated within a row");
  if (!grid_.columns_repeat_free()) throw std::invalid_argument("symbol repeated within a column");
}

RowLatinSquare::RowLatinSquare(SymbolGrid grid) : grid_(std::move(grid)) {
  if (!grid_.square() || grid_.symbols() != grid_.rows())
    throw std::invalid_argument("row-Latin square must be n x n over n symbols");
  if (!all_rows_permutations(grid_)) throw std::invalid_argument("row is not a permutation");
}

RowLatinSquare RowLatinSquare::from_rows(const std::vector<std::vector<int>>& one_based) {
  return RowLatinSquare(grid_from_rows(one_based));
}

LatinSquare::LatinSquare(SymbolGrid grid) : grid_(std::move(grid)) {
  if (!grid_.square() || grid_.symbols() != grid_.rows())
    throw std::invalid_argument("Latin square must be n x n over n symbols");
  if (grid_.rows() == 0) throw std::invalid_argument("Latin square order must be positive");
  if (!all_rows_permutations(grid_)) throw std::invalid_argument("row is not a permutation");
  if (!all_columns_permutations(grid_)) throw std::invalid_argument("column is not a permutation");
}

LatinSquare LatinSquare::from_rows(const std::vector<std::vector<int>>& one_based) {
  return LatinSquare(grid_from_rows(one_based));
}

LatinSquare LatinSquare::cyclic(int n) {
  SymbolGrid g(n, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g.set(r, c, static_cast<Symbol>((r + c) % n));
  return LatinSquare(std::move(g));
}

// ---------------------------------------------------------------------------

ParseError::ParseError(int line_, int column_, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) +
                         ": " + what),
      line(line_),
      column(column_),
      reason(what) {}

std::string_view kind_name(StructureKind kind) {
  switch (kind) {
    case StructureKind::latin_square: return "latin-square";
    case StructureKind::row_latin_square: return "row-latin-square";
    case StructureKind::latin_array: return "latin-array";
  }
  return "unknown";
}

const SymbolGrid& ParsedStructure::grid() const {
  return std::visit([](const auto& v) -> const SymbolGrid& { return v.grid(); }, value);
}

namespace {

struct Token {
  long value;
  int line;
  int column;
};

std::vector<std::vector<Token>> tokenize(std::string_view text) {
  std::vector<std::vector<Token>> lines;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      long v = 0;
      const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, v);
      if (ec != std::errc() || ptr != line.data() + j)
        throw ParseError(line_no, static_cast<int>(i) + 1,
                         "expected an integer, got '" + std::string(line.substr(i, j - i)) + "'");
      tokens.push_back({v, line_no, static_cast<int>(i) + 1});
      i = j;
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

}  // namespace

ParsedStructure parse_square(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(1, 1, "empty input");
  const auto& header = lines.front();
  long rows = 0, cols = 0, symbols = 0;
  const bool square_header = header.size() == 1;
  if (square_header) {
    rows = cols = symbols = header[0].value;
    if (rows < 1) throw ParseError(header[0].line, header[0].column, "order must be positive");
  } else if (header.size() == 3) {
    rows = header[0].value;
    cols = header[1].value;
    symbols = header[2].value;
    for (const auto& t : header)
      if (t.value < 0) throw ParseError(t.line, t.column, "negative dimension");
  } else {
    throw ParseError(header[0].line, header[0].column, "header must be 'n' or 'm k n'");
  }
  for (const auto& t : header)
    if (t.value > kMaxOrder)
      throw ParseError(t.line, t.column, "dimension exceeds " + std::to_string(kMaxOrder));

  if (static_cast<long>(lines.size()) - 1 != rows) {
    const auto& last = lines.back().back();
    throw ParseError(last.line, last.column,
                     "expected " + std::to_string(rows) + " rows, found " +
                         std::to_string(lines.size() - 1));
  }

  std::vector<Symbol> cells;
  cells.reserve(static_cast<std::size_t>(rows * cols));
  for (long r = 0; r < rows; ++r) {
    const auto& line = lines[static_cast<std::size_t>(r) + 1];
    if (static_cast<long>(line.size()) != cols) {
      const auto& t = line.size() > static_cast<std::size_t>(cols) ? line[static_cast<std::size_t>(cols)]
                                                                  : line.back();
      throw ParseError(t.line, t.column,
                       "ragged grid: row has " + std::to_string(line.size()) + " entries, expected " +
                           std::to_string(cols));
    }
    std::uint64_t seen = 0;
    for (const auto& t : line) {
      if (t.value < 1 || t.value > symbols)
        throw ParseError(t.line, t.column,
                         "symbol " + std::to_string(t.value) + " out of range 1.." + std::to_string(symbols));
      const std::uint64_t bit = std::uint64_t{1} << (t.value - 1);
      if (seen & bit)
        throw ParseError(t.line, t.column, "symbol " + std::to_string(t.value) + " repeated in row");
      seen |= bit;
      cells.push_back(static_cast<Symbol>(t.value - 1));
    }
  }

  SymbolGrid grid(static_cast<int>(rows), static_cast<int>(cols), static_cast<int>(symbols), std::move(cells));
  const bool rows_latin = all_rows_permutations(grid);
  const bool cols_latin = all_columns_permutations(grid);
  const bool promotable = grid.square() && grid.rows() == grid.symbols() && grid.rows() > 0;

  if (promotable && rows_latin && cols_latin)
    return {LatinSquare(std::move(grid)), StructureKind::latin_square, true, true};
  if (square_header) return {RowLatinSquare(std::move(grid)), StructureKind::row_latin_square, true, false};

  // Array: locate the first column repeat for the diagnostic.
  for (int c = 0; c < grid.cols(); ++c) {
    std::uint64_t seen = 0;
    for (int r = 0; r < grid.rows(); ++r) {
      const std::uint64_t bit = std::uint64_t{1} << grid(r, c);
      if (seen & bit) {
        const auto& t = lines[static_cast<std::size_t>(r) + 1][static_cast<std::size_t>(c)];
        throw ParseError(t.line, t.column, "symbol " + std::to_string(grid(r, c) + 1) + " repeated in column");
      }
      seen |= bit;
    }
  }
  return {LatinArray(std::move(grid)), StructureKind::latin_array, rows_latin, cols_latin};
}

ParsedStructure read_square_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_square(buf.str());
}

std::string to_lsq(const SymbolGrid& grid) {
  std::string out;
  if (grid.square() && grid.rows() == grid.symbols() && grid.rows() > 0)
    out = std::to_string(grid.rows()) + "\n";
  else
    out = std::to_string(grid.rows()) + " " + std::to_string(grid.cols()) + " " +
          std::to_string(grid.symbols()) + "\n";
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      if (c) out += ' ';
      out += std::to_string(grid(r, c) + 1);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------

Conjugacy::Conjugacy(int a, int b, int c) : image_{a, b, c} {
  std::array<int, 3> sorted = image_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != std::array<int, 3>{1, 2, 3}) throw std::invalid_argument("not a permutation of 123");
}

Conjugacy Conjugacy::parse(std::string_view text) {
  if (text.size() != 3) throw std::invalid_argument("conjugacy must be three digits, e.g. 312");
  return Conjugacy(text[0] - '0', text[1] - '0', text[2] - '0');
}

std::array<Conjugacy, 6> Conjugacy::all() {
  return {Conjugacy(1, 2, 3), Conjugacy(1, 3, 2), Conjugacy(2, 1, 3),
          Conjugacy(2, 3, 1), Conjugacy(3, 1, 2), Conjugacy(3, 2, 1)};
}

Conjugacy operator*(const Conjugacy& h, const Conjugacy& g) {
  return Conjugacy(h.image(g.image(1)), h.image(g.image(2)), h.image(g.image(3)));
}

Conjugacy Conjugacy::inverse() const {
  std::array<int, 3> inv{};
  for (int i = 1; i <= 3; ++i) inv[image(i) - 1] = i;
  return Conjugacy(inv[0], inv[1], inv[2]);
}

std::string Conjugacy::str() const {
  return {static_cast<char>('0' + image_[0]), static_cast<char>('0' + image_[1]),
          static_cast<char>('0' + image_[2])};
}

LatinSquare conjugate(const LatinSquare& l, const Conjugacy& g) {
  const int n = l.order();
  SymbolGrid out(n, n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const std::array<int, 3> entry{r, c, l(r, c)};
      std::array<int, 3> moved{};
      for (int i = 0; i < 3; ++i) moved[g.image(i + 1) - 1] = entry[i];
      out.set(moved[0], moved[1], static_cast<Symbol>(moved[2]));
    }
  return LatinSquare(std::move(out));
}

LatinArray remove_row_column(const LatinSquare& l, int row, int col) {
  if (row < 0 || row >= l.order() || col < 0 || col >= l.order())
    throw std::out_of_range("row/column index out of range");
  return LatinArray(l.grid().without(row, col));
}

// ---------------------------------------------------------------------------

Diagonal::Diagonal(std::vector<Symbol> column_of_row) : columns_(std::move(column_of_row)) {
  const std::size_t n = columns_.size();
  if (n > kMaxOrder) throw std::invalid_argument("diagonal too long");
  std::uint64_t seen = 0;
  for (Symbol c : columns_) {
    if (c >= n) throw std::invalid_argument("diagonal column out of range");
    seen |= std::uint64_t{1} << c;
  }
  if (static_cast<std::size_t>(std::popcount(seen)) != n) throw std::invalid_argument("diagonal is not a bijection");
}

Diagonal Diagonal::identity(int n) {
  std::vector<Symbol> cols(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) cols[static_cast<std::size_t>(i)] = static_cast<Symbol>(i);
  return Diagonal(std::move(cols));
}

int weight(const SymbolGrid& grid, const Diagonal& d) {
  if (!grid.square() || grid.rows() != d.size()) throw std::invalid_argument("diagonal size mismatch");
  std::uint64_t seen = 0;
  for (int r = 0; r < d.size(); ++r) seen |= std::uint64_t{1} << grid(r, d.column(r));
  return std::popcount(seen);
}

TransversalParities transversal_parities(const LatinSquare& l, const Diagonal& d) {
  const int n = l.order();
  if (weight(l.grid(), d) != n) throw std::invalid_argument("diagonal is not a transversal");
  std::vector<int> sigma_r(n), sigma_c(n), sigma_s(n);
  for (int r = 0; r < n; ++r) {
    const int c = d.column(r);
    const int s = l(r, c);
    sigma_r[r] = c;
    sigma_c[c] = s;
    sigma_s[s] = r;
  }
  return {permutation_parity<int>(sigma_r), permutation_parity<int>(sigma_c),
          permutation_parity<int>(sigma_s)};
}

std::vector<std::vector<Symbol>> symbol_permutations(const LatinSquare& l) {
  const int n = l.order();
  std::vector<std::vector<Symbol>> theta(n, std::vector<Symbol>(n));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) theta[l(r, c)][r] = static_cast<Symbol>(c);
  return theta;
}

SquareParities square_parities(const LatinSquare& l) {
  const int n = l.order();
  SquareParities p;
  for (int r = 0; r < n; ++r) p.row ^= permutation_parity(l.grid().row(r));
  std::vector<Symbol> column(n);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) column[r] = l(r, c);
    p.column ^= permutation_parity<Symbol>(column);
  }
  for (const auto& theta : symbol_permutations(l)) p.symbol ^= permutation_parity<Symbol>(theta);
  return p;
}

// ---------------------------------------------------------------------------

std::vector<Intercalate> find_intercalates(const LatinSquare& l) {
  const int n = l.order();
  std::vector<Intercalate> out;
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = r1 + 1; r2 < n; ++r2)
      for (int c1 = 0; c1 < n; ++c1)
        for (int c2 = c1 + 1; c2 < n; ++c2)
          if (l(r1, c1) == l(r2, c2) && l(r1, c2) == l(r2, c1))
            out.push_back({r1, r2, c1, c2, l(r1, c1), l(r1, c2)});
  return out;
}

bool has_intercalate(const LatinSquare& l, const Intercalate& ic) {
  const int n = l.order();
  if (ic.r1 < 0 || ic.r2 >= n || ic.c1 < 0 || ic.c2 >= n || ic.r1 >= ic.r2 || ic.c1 >= ic.c2) return false;
  return l(ic.r1, ic.c1) == ic.a && l(ic.r2, ic.c2) == ic.a && l(ic.r1, ic.c2) == ic.b &&
         l(ic.r2, ic.c1) == ic.b;
}

LatinSquare turn_intercalate(const LatinSquare& l, const Intercalate& ic) {
  if (!has_intercalate(l, ic)) throw std::invalid_argument("intercalate not present in square");
  SymbolGrid g = l.grid();
  g.set(ic.r1, ic.c1, ic.b);
  g.set(ic.r2, ic.c2, ic.b);
  g.set(ic.r1, ic.c2, ic.a);
  g.set(ic.r2, ic.c1, ic.a);
  return LatinSquare(std::move(g));
}

}  // namespace lparity

#include "lparity/matrix.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

namespace lparity {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt b = 1;
  for (long i = 1; i <= k; ++i) {
    b *= n - k + i;
    b /= i;
  }
  return b;
}

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  data_.assign(static_cast<std::size_t>(rows) * cols, BigInt(0));
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
    : rows_(static_cast<int>(rows.size())), cols_(rows.size() ? static_cast<int>(rows.begin()->size()) : 0) {
  data_.reserve(static_cast<std::size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::ones(int rows, int cols) {
  IntMatrix m(rows, cols);
  for (auto& v : m.data_) v = 1;
  return m;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::minor(int row, int col) const {
  if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw std::out_of_range("minor index out of range");
  IntMatrix m(rows_ - 1, cols_ - 1);
  for (int r = 0, rr = 0; r < rows_; ++r) {
    if (r == row) continue;
    for (int c = 0, cc = 0; c < cols_; ++c) {
      if (c == col) continue;
      m(rr, cc++) = (*this)(r, c);
    }
    ++rr;
  }
  return m;
}

std::vector<BigInt> IntMatrix::row_sums() const {
  std::vector<BigInt> s(static_cast<std::size_t>(rows_), BigInt(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) s[r] += (*this)(r, c);
  return s;
}

std::vector<BigInt> IntMatrix::column_sums() const {
  std::vector<BigInt> s(static_cast<std::size_t>(cols_), BigInt(0));
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) s[c] += (*this)(r, c);
  return s;
}

bool IntMatrix::is_zero_one() const {
  for (const auto& v : data_)
    if (v != 0 && v != 1) return false;
  return true;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] -= b.data_[i];
  return m;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.data_.size(); ++i) m.data_[i] += b.data_[i];
  return m;
}

std::string to_text(const IntMatrix& a) {
  std::ostringstream out;
  out << a.rows() << ' ' << a.cols() << '\n';
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) out << (c ? " " : "") << a(r, c);
    out << '\n';
  }
  return out.str();
}

IntMatrix parse_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  int rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw std::invalid_argument("matrix header must be 'rows cols'");
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      std::string tok;
      if (!(in >> tok)) throw std::invalid_argument("matrix has too few entries");
      try {
        m(r, c) = BigInt(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad matrix entry '" + tok + "'");
      }
    }
  std::string extra;
  if (in >> extra) throw std::invalid_argument("matrix has too many entries");
  return m;
}

std::optional<int> regular_degree(const IntMatrix& a) {
  if (!a.square() || !a.is_zero_one()) return std::nullopt;
  const int n = a.rows();
  if (n == 0) return 0;
  const auto rs = a.row_sums();
  const auto cs = a.column_sums();
  const BigInt k = rs[0];
  for (int i = 0; i < n; ++i)
    if (rs[i] != k || cs[i] != k) return std::nullopt;
  return static_cast<int>(k);
}

RegularZeroOne::RegularZeroOne(IntMatrix a) : matrix_(std::move(a)) {
  const auto k = regular_degree(matrix_);
  if (!k) throw std::invalid_argument("matrix is not a regular 0-1 matrix");
  degree_ = *k;
}

}  // namespace lparity

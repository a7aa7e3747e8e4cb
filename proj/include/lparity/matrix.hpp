#pragma once

#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lparity/integer.hpp"

namespace lparity {

/// Dense matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols);
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntMatrix identity(int n);
  static IntMatrix ones(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const BigInt& operator()(int r, int c) const { return data_[index(r, c)]; }
  BigInt& operator()(int r, int c) { return data_[index(r, c)]; }

  IntMatrix transposed() const;
  /// A(i|j): row `row` and column `col` deleted.
  IntMatrix minor(int row, int col) const;

  std::vector<BigInt> row_sums() const;
  std::vector<BigInt> column_sums() const;
  bool is_zero_one() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t index(int r, int c) const { return static_cast<std::size_t>(r) * cols_ + c; }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<BigInt> data_;
};

/// Text form: "rows cols" then one whitespace-separated line per row.
std::string to_text(const IntMatrix& a);
IntMatrix parse_matrix(std::string_view text);

/// Member of Lambda_n^k: a 0-1 matrix with every row and column sum equal to k.
class RegularZeroOne {
 public:
  explicit RegularZeroOne(IntMatrix a);

  int order() const { return matrix_.rows(); }
  int degree() const { return degree_; }
  const IntMatrix& matrix() const { return matrix_; }

 private:
  IntMatrix matrix_;
  int degree_ = 0;
};

/// k if `a` is a square 0-1 matrix in Lambda_n^k.
std::optional<int> regular_degree(const IntMatrix& a);

}  // namespace lparity

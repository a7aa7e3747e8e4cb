#pragma once

#include <random>
#include <vector>

#include "lparity/latin.hpp"
#include "lparity/matrix.hpp"
#include "oracles.hpp"

inline oracle::Grid to_grid(const lparity::SymbolGrid& g) {
  oracle::Grid out(g.rows(), std::vector<int>(g.cols()));
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) out[i][j] = g(i, j);
  return out;
}
inline oracle::Grid to_grid(const lparity::LatinSquare& l) { return to_grid(l.grid()); }

inline std::vector<std::vector<long long>> to_rows(const lparity::IntMatrix& a) {
  std::vector<std::vector<long long>> out(a.rows(), std::vector<long long>(a.cols()));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out[i][j] = static_cast<long long>(a(i, j));
  return out;
}

inline lparity::IntMatrix random_matrix(std::mt19937_64& rng, int n, long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  lparity::IntMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = d(rng);
  return a;
}

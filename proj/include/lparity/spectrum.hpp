#pragma once

// Transversal and diagonal counting: E_n, the signed count, parity types,
// the weight spectrum E_1..E_n (plain and even-diagonal), the subset
// permanent sums R_1..R_n, and the depleted-square counts t_ij and N_r.

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "lparity/algebra.hpp"
#include "lparity/errors.hpp"
#include "lparity/integer.hpp"
#include "lparity/latin.hpp"

namespace lparity {

inline constexpr int kSpectrumMaxOrder = 11;
inline constexpr int kRSequenceMaxOrder = 13;
inline constexpr int kSignedViaDetMaxOrder = 20;

/// E_1..E_n. With `even_only` the counts are restricted to even diagonals.
struct DiagonalSpectrum {
  int order = 0;
  bool even_only = false;
  std::vector<BigInt> counts;  // counts[m - 1] = E_m

  /// E_m, zero for m outside 1..n.
  BigInt E(int m) const { return m >= 1 && m <= order ? counts[static_cast<std::size_t>(m - 1)] : BigInt(0); }
  BigInt total() const;

  friend bool operator==(const DiagonalSpectrum&, const DiagonalSpectrum&) = default;
};

enum class PermanentMode { per, det, even_per };

/// R_r = <r> f(L[X]) for r = 0..n, with f = per or per^ev. R_0 = 0 for n >= 1.
struct RSequence {
  int order = 0;
  PermanentMode mode = PermanentMode::per;
  std::vector<BigInt> values;  // values[r], r = 0..n

  BigInt R(int r) const { return r >= 0 && r <= order ? values[static_cast<std::size_t>(r)] : BigInt(0); }
};

/// Transversal counts by parity type (eps_r, eps_c, eps_s).
struct ParityTypeCounts {
  std::uint64_t w = 0;  // T^000
  std::uint64_t x = 0;  // T^011
  std::uint64_t y = 0;  // T^101
  std::uint64_t z = 0;  // T^110

  std::uint64_t total() const { return w + x + y + z; }
  friend bool operator==(const ParityTypeCounts&, const ParityTypeCounts&) = default;
};

struct DepletedCounts {
  int order = 0;
  std::vector<std::vector<std::uint64_t>> t;  // t[i][j]: transversals of L(i|j)
  std::vector<std::uint64_t> N;               // N[r]

  std::uint64_t t_sum() const;
};

/// Transversals of a rows x cols grid: min(rows, cols) cells with distinct
/// rows, columns and symbols. The 0 x 0 grid has exactly one (empty) transversal.
std::uint64_t count_transversals(const SymbolGrid& g);
inline std::uint64_t count_transversals(const LatinSquare& l) { return count_transversals(l.grid()); }
inline std::uint64_t count_transversals(const RowLatinSquare& l) { return count_transversals(l.grid()); }
inline std::uint64_t count_transversals(const LatinArray& a) { return count_transversals(a.grid()); }

/// #even transversals - #odd transversals, parity of the row -> column map.
std::int64_t signed_count(const LatinSquare& l);
/// Same quantity via sum_S (-1)^(n-|S|) det L_S over symbol subsets S.
BigInt signed_count_via_det(const LatinSquare& l);

ParityTypeCounts parity_type_counts(const LatinSquare& l);

/// Enumerates all n! diagonals. n <= 11.
DiagonalSpectrum spectrum_enumerate(const LatinSquare& l, const ExecOptions& exec = {});
/// Even diagonals only. n <= 11.
DiagonalSpectrum ev_spectrum(const LatinSquare& l, const ExecOptions& exec = {});

/// One pass over all diagonals collecting the plain and even spectra and
/// N_r (weight n-1 diagonals whose row-r symbol is the repeated one). n <= 11.
struct DiagonalCensus {
  DiagonalSpectrum plain;
  DiagonalSpectrum even;
  std::vector<std::uint64_t> N;
};
DiagonalCensus diagonal_census(const LatinSquare& l, const ExecOptions& exec = {});

/// The 0-1 indicator matrix of cells whose symbol is in `symbol_mask`.
IntMatrix indicator_matrix(const LatinSquare& l, std::uint64_t symbol_mask);
/// per / det / per^ev of the indicator matrix of `symbol_mask`.
BigInt angle_eval(const LatinSquare& l, std::uint64_t symbol_mask, PermanentMode mode);

/// Sum of angle_eval over every r-subset of symbols, r = 0..n. n <= 13.
RSequence r_sequence(const LatinSquare& l, PermanentMode mode = PermanentMode::per);

/// E_m = sum_{r=1..m} (-1)^(m-r) C(n-r, n-m) R_r.
DiagonalSpectrum spectrum_from_r(const RSequence& r);

/// R_2 as a sum over unordered symbol pairs {s, s'} of 2^c, c the number of
/// cycles of theta_s^-1 theta_s'.
BigInt r2_cycle_formula(const LatinSquare& l);

enum class NrMethod {
  enumerate,  // diagonal census, n <= 11
  identity,   // N_r = sum_c t_rc - E_n
};
DepletedCounts depleted_counts(const LatinSquare& l, NrMethod method = NrMethod::enumerate);
std::vector<std::vector<std::uint64_t>> depleted_transversals(const LatinSquare& l);
std::vector<std::uint64_t> n_from_identity(const std::vector<std::vector<std::uint64_t>>& t, std::uint64_t e_n);

/// Number of weight-(n-1) diagonals via sum t = n E_n + 2 E_{n-1}.
std::uint64_t e_n_minus_1_from_depleted(const std::vector<std::vector<std::uint64_t>>& t, std::uint64_t e_n);

// JSON report: {"order", "E", "R", "signed", "types", "t", "N"}; absent
// quantities are omitted. Integers beyond 64 bits serialize as strings.
nlohmann::json to_json(const BigInt& v);
struct SpectrumReport {
  int order = 0;
  std::optional<DiagonalSpectrum> E;
  std::optional<DiagonalSpectrum> E_even;
  std::optional<RSequence> R;
  std::optional<RSequence> R_even;
  std::optional<std::int64_t> signed_count;
  std::optional<std::uint64_t> transversals;
  std::optional<ParityTypeCounts> types;
  std::optional<DepletedCounts> depleted;
};
nlohmann::json to_json(const SpectrumReport& report);

}  // namespace lparity

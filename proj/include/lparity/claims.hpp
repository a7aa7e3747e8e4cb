#pragma once

// Registry of named congruences and identities, each an executable check with
// a hypothesis guard, plus the suite runner that tallies outcomes over a
// corpus and preserves counterexamples.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "lparity/algebra.hpp"
#include "lparity/latin.hpp"
#include "lparity/matrix.hpp"

namespace lparity {

enum class ClaimKind {
  theorem,        // proved; a failure is a bug
  external,       // imported result, verified empirically
  conjecture,     // a failure is a counterexample worth reporting
  documentation,  // registered for completeness, never evaluated
};

enum class SubjectKind { latin_square, row_latin_square, matrix };

enum class Outcome { pass, fail, not_applicable, skipped_cost, documentation };

std::string_view kind_name(ClaimKind k);
std::string_view outcome_name(Outcome o);

struct ClaimInfo {
  std::string key;
  ClaimKind kind;
  SubjectKind subject;
  std::string statement;
};

/// Every registered claim, in a fixed order.
const std::vector<ClaimInfo>& claim_registry();
/// Throws std::invalid_argument for unknown keys.
const ClaimInfo& claim_info(std::string_view key);
std::vector<std::string> claims_of_kind(ClaimKind kind);
/// Expands a comma-separated key list; throws on unknown keys.
std::vector<std::string> parse_claim_list(std::string_view list);

struct Subject {
  std::string id;
  std::variant<LatinSquare, RowLatinSquare, IntMatrix> value;

  static Subject of(LatinSquare l);
  static Subject of(RowLatinSquare l);
  static Subject of(IntMatrix a, std::string id);

  SubjectKind kind() const;
  /// .lsq text for squares, "rows cols" text for matrices.
  std::string serialized() const;
};

/// Whether a claim accepts this subject at all. Latin squares are also
/// row-Latin squares; matrix claims run on a square through its symbol-subset
/// indicator matrices.
bool accepts(const ClaimInfo& claim, const Subject& s);

struct ClaimReport {
  std::string claim;
  ClaimKind kind = ClaimKind::theorem;
  std::string subject;
  Outcome outcome = Outcome::not_applicable;
  nlohmann::json witness;
  std::string note;
  double elapsed_ms = 0;

  bool holds() const { return outcome == Outcome::pass; }
};
nlohmann::json to_json(const ClaimReport& r);

/// Throws std::invalid_argument on unknown keys or a subject the claim does
/// not accept.
ClaimReport check(std::string_view key, const Subject& subject);

struct Tally {
  std::uint64_t pass = 0, fail = 0, not_applicable = 0, skipped_cost = 0, documentation = 0;
  void add(Outcome o);
  std::uint64_t total() const { return pass + fail + not_applicable + skipped_cost + documentation; }
};

struct Counterexample {
  std::string claim;
  ClaimKind kind;
  std::string subject;
  std::string serialized;
  nlohmann::json witness;

  friend bool operator<(const Counterexample& a, const Counterexample& b) {
    return std::tie(a.claim, a.subject) < std::tie(b.claim, b.subject);
  }
};

struct SuiteReport {
  std::map<std::string, Tally> tallies;
  std::vector<Counterexample> failures;  // sorted by (claim, subject)
  std::uint64_t subjects = 0;

  bool theorem_failure() const;
  bool conjecture_counterexample() const;
  nlohmann::json summary_json() const;
  std::string summary_table() const;
};

struct SuiteOptions {
  unsigned threads = 1;
  std::size_t chunk = 64;
  /// Receives every report in canonical (subject, registry) order.
  std::function<void(const ClaimReport&)> sink;
  /// Stop after the first subject whose checks contain a failure.
  bool halt_on_failure = false;
};

/// `next` yields subjects until it returns nullopt. Claims that do not accept
/// a subject are not evaluated on it.
SuiteReport run_suite(const std::function<std::optional<Subject>()>& next, std::span<const std::string> claims,
                      const SuiteOptions& opt = {});
SuiteReport run_suite(const std::vector<Subject>& subjects, std::span<const std::string> claims,
                      const SuiteOptions& opt = {});

}  // namespace lparity

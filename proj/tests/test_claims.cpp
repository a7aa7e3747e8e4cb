#include <doctest.h>

#include <set>

#include "lparity/claims.hpp"
#include "lparity/search.hpp"
#include "support.hpp"

using namespace lparity;

TEST_SUITE("claims") {
  TEST_CASE("registry keys are unique and resolvable") {
    std::set<std::string> keys;
    for (const auto& c : claim_registry()) {
      CHECK(keys.insert(c.key).second);
      CHECK(claim_info(c.key).statement == c.statement);
      CHECK_FALSE(c.statement.empty());
    }
    CHECK(keys.count("thm-bala"));
    CHECK(keys.count("conj-quad-t"));
    CHECK_THROWS_AS(claim_info("no-such-claim"), std::invalid_argument);
    CHECK(parse_claim_list("thm-bala, cor-types") == std::vector<std::string>{"thm-bala", "cor-types"});
    CHECK_THROWS_AS(parse_claim_list("thm-bala,bogus"), std::invalid_argument);
    const auto conj = claims_of_kind(ClaimKind::conjecture);
    CHECK(conj.size() == 4);
  }

  TEST_CASE("subjects and acceptance") {
    const Subject sq = Subject::of(LatinSquare::cyclic(4));
    const Subject rl = Subject::of(RowLatinSquare::from_rows({{1, 2}, {1, 2}}));
    const Subject mat = Subject::of(IntMatrix::ones(3, 3), "J3");
    CHECK(sq.kind() == SubjectKind::latin_square);
    CHECK(rl.kind() == SubjectKind::row_latin_square);
    CHECK(mat.kind() == SubjectKind::matrix);
    CHECK(sq.serialized() == to_lsq(LatinSquare::cyclic(4)));
    CHECK(sq.id.rfind("sq4-", 0) == 0);

    CHECK(accepts(claim_info("thm-bala"), sq));
    CHECK_FALSE(accepts(claim_info("thm-bala"), rl));
    CHECK(accepts(claim_info("thm-same-delta-row"), rl));
    CHECK(accepts(claim_info("thm-same-delta-row"), sq));
    CHECK(accepts(claim_info("thm-per-2J"), mat));
    CHECK_FALSE(accepts(claim_info("thm-bala"), mat));
    CHECK_THROWS_AS(check("thm-bala", mat), std::invalid_argument);
  }

  TEST_CASE("hypothesis guards give not-applicable") {
    const Subject odd = Subject::of(LatinSquare::cyclic(5));
    CHECK(check("thm-bala", odd).outcome == Outcome::not_applicable);
    CHECK(check("thm-trans-mult-4", Subject::of(LatinSquare::cyclic(4))).outcome == Outcome::not_applicable);
    CHECK(check("thm-bala", Subject::of(LatinSquare::cyclic(4))).outcome == Outcome::pass);
    CHECK(check("doc-order8-22mod63", odd).outcome == Outcome::documentation);
  }

  TEST_CASE("row-Latin fixtures break the Latin-square congruence") {
    // Evenness survives for row-Latin squares; divisibility by 4 does not.
    const auto r2 = Subject::of(RowLatinSquare(fixture("rowlatin2").grid));
    const auto r6 = Subject::of(RowLatinSquare(fixture("rowlatin6").grid));
    CHECK(check("thm-bala-row", r2).outcome == Outcome::pass);
    CHECK(check("thm-bala-row", r6).outcome == Outcome::pass);
    CHECK(check("thm-same-delta-row", r6).outcome == Outcome::pass);
  }

  TEST_CASE("matrix claims on explicit matrices") {
    const Subject j5 = Subject::of(IntMatrix::ones(5, 5) + IntMatrix::ones(5, 5) - IntMatrix::ones(5, 5), "J5");
    CHECK(check("thm-per-2J", j5).outcome == Outcome::not_applicable);  // k = 5
    const Subject a = Subject::of(sample_regular(7, 6, 1).matrix(), "l76");
    CHECK(check("thm-per-2J", a).outcome == Outcome::pass);
    CHECK(check("thm-minors-quad", a).outcome == Outcome::pass);
    CHECK(check("eq-compdet", a).outcome == Outcome::pass);
    const Subject b = Subject::of(sample_regular(7, 4, 2).matrix(), "l74");
    CHECK(check("cor-per-lambda4k", b).outcome == Outcome::pass);
    CHECK(check("thm-per-mod4", b).outcome == Outcome::pass);
  }

  TEST_CASE("cost guards become skipped-cost") {
    const auto r = check("lem-identities-a", Subject::of(random_square(14, 1)));
    CHECK(r.outcome == Outcome::skipped_cost);
    CHECK(r.witness.contains("guard"));
    CHECK(r.witness.contains("limit"));
  }

  TEST_CASE("suite over order 4 and 5") {
    std::vector<Subject> subjects;
    for (int n = 1; n <= 5; ++n)
      for (const auto& l : exhaustive_reduced(n)) subjects.push_back(Subject::of(l));
    std::vector<std::string> keys;
    for (const auto& c : claim_registry()) keys.push_back(c.key);

    std::vector<ClaimReport> seen;
    SuiteOptions opt;
    opt.sink = [&](const ClaimReport& r) { seen.push_back(r); };
    const auto rep = run_suite(subjects, keys, opt);
    CHECK(rep.subjects == subjects.size());
    CHECK(rep.failures.empty());
    CHECK_FALSE(rep.theorem_failure());
    CHECK_FALSE(rep.conjecture_counterexample());
    std::uint64_t total = 0;
    for (const auto& [k, t] : rep.tallies) total += t.total();
    CHECK(total == seen.size());
    CHECK(rep.tallies.at("thm-bala").pass == 1 + 4);  // orders 2 and 4
    CHECK(rep.tallies.at("doc-order8-22mod63").documentation == subjects.size());

    SuiteOptions threaded;
    threaded.threads = 3;
    threaded.chunk = 5;
    std::vector<ClaimReport> seen3;
    threaded.sink = [&](const ClaimReport& r) { seen3.push_back(r); };
    const auto rep3 = run_suite(subjects, keys, threaded);
    REQUIRE(seen3.size() == seen.size());
    for (std::size_t i = 0; i < seen.size(); ++i) {
      CHECK(seen3[i].claim == seen[i].claim);
      CHECK(seen3[i].subject == seen[i].subject);
      CHECK(seen3[i].outcome == seen[i].outcome);
    }
    CHECK(rep3.summary_json() == rep.summary_json());
    CHECK(rep.summary_table().find("thm-bala") != std::string::npos);
  }

  TEST_CASE("report JSON") {
    const auto r = check("thm-bala", Subject::of(LatinSquare::cyclic(4)));
    const auto j = to_json(r);
    CHECK(j["claim"] == "thm-bala");
    CHECK(j["outcome"] == "pass");
    CHECK(j["kind"] == "theorem");
    CHECK(j.contains("witness"));
  }
}

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "ccgp/oracle.hpp"
#include "ccgp/suites.hpp"
#include "fixtures.hpp"

using namespace ccgp;
using ccgp_tests::W;
using ccgp_tests::flower_presentation;

namespace {

Budget small_budget(std::size_t max_syllables, std::size_t trials,
                    std::uint64_t seed = 12345) {
  Budget b;
  b.max_syllables = max_syllables;
  b.trials = trials;
  b.seed = seed;
  return b;
}

bool same_report(const SuiteReport& a, const SuiteReport& b) {
  return a.suite == b.suite && a.tested == b.tested && a.passed == b.passed &&
         a.failed == b.failed && a.skipped == b.skipped && a.seed == b.seed &&
         a.counterexample == b.counterexample && a.line() == b.line();
}

}  // namespace

TEST_CASE("oracle primitives on the four-petal flower") {
  const Presentation p = flower_presentation(4, VertexGroupSpec::cyclic(2));

  SECTION("shuffle closure swaps exactly the commuting neighbors") {
    REQUIRE(shuffle_closure(p, W(p, "w1^1 . b2^1")).size() == 2);
    REQUIRE(shuffle_closure(p, W(p, "w1^1 . w2^1")).size() == 1);
    REQUIRE(shuffle_closure(p, Word{}).size() == 1);
  }

  SECTION("oracle equality distinguishes commuting from non-commuting") {
    REQUIRE(oracle_equal(p, W(p, "b1^1 . w1^1"), W(p, "w1^1 . b1^1")));
    REQUIRE_FALSE(oracle_equal(p, W(p, "w1^1 . w2^1"), W(p, "w2^1 . w1^1")));
    REQUIRE(oracle_equal(p, W(p, "w1^1 . w1^1"), Word{}));
  }

  SECTION("element enumeration is identity-first and respects the budget") {
    Budget one;
    one.max_syllables = 1;
    const std::vector<CanonicalWord> ball = enumerate_elements(p, one);
    REQUIRE(ball.size() == 9);  // identity plus one generator per vertex
    REQUIRE(ball.front().empty());

    Budget zero;
    zero.max_count = 0;
    REQUIRE(enumerate_elements(p, zero).empty());

    Budget tight;
    tight.max_syllables = 2;
    tight.max_count = 4;
    REQUIRE_THROWS_AS(enumerate_elements(p, tight), BudgetExhausted);
  }

  SECTION("random sequences are reproducible from the seed") {
    SplitMix64 a{99};
    SplitMix64 b{99};
    for (int t = 0; t < 50; ++t)
      REQUIRE(random_sequence(p, a, 5) == random_sequence(p, b, 5));
  }
}

TEST_CASE("suite report line format is pinned") {
  SuiteReport r;
  r.suite = "demo";
  r.tested = 3;
  r.passed = 2;
  r.failed = 1;
  r.skipped = 4;
  r.seed = 9;
  REQUIRE(r.line() == "suite=demo tested=3 passed=2 failed=1 skipped=4 seed=9");
  REQUIRE_FALSE(r.vacuous());

  SuiteReport empty;
  empty.suite = "demo";
  empty.seed = 7;
  REQUIRE(empty.vacuous());
  REQUIRE(empty.line() ==
          "suite=demo tested=0 passed=0 failed=0 skipped=0 seed=7 vacuous=true");
}

TEST_CASE("failure recording keeps the least counterexample") {
  SuiteReport r;
  r.suite = "demo";
  detail::record_fail(r, "m-counterexample");
  detail::record_fail(r, "a-counterexample");
  detail::record_fail(r, "z-counterexample");
  detail::record_pass(r);
  REQUIRE(r.tested == 4);
  REQUIRE(r.passed == 1);
  REQUIRE(r.failed == 3);
  REQUIRE(r.counterexample == "a-counterexample");
}

TEST_CASE("every suite passes a small budget without vacuity") {
  struct Run {
    std::string name;
    Budget budget;
    bool expect_skips;
  };
  const std::vector<Run> runs = {
      {"normal-form", small_budget(2, 40), false},
      {"minimal-length", small_budget(2, 0), false},
      {"part1", small_budget(2, 0), true},
      {"part2", small_budget(2, 0), true},
      {"cyclic", small_budget(4, 30), false},
      {"normalizer", small_budget(2, 0), false},
      {"wreath", small_budget(4, 0), false},
  };
  for (const Run& run : runs) {
    INFO("suite " << run.name);
    const SuiteReport rep = verify_suite(run.name, run.budget);
    CAPTURE(rep.line(), rep.counterexample);
    REQUIRE(rep.suite == run.name);
    REQUIRE(rep.seed == run.budget.seed);
    REQUIRE_FALSE(rep.vacuous());
    REQUIRE(rep.failed == 0);
    REQUIRE(rep.counterexample.empty());
    REQUIRE(rep.passed == rep.tested);
    if (run.expect_skips)
      REQUIRE(rep.skipped > 0);
    else
      REQUIRE(rep.skipped == 0);
  }
}

TEST_CASE("identical budgets produce byte-identical reports") {
  const std::vector<std::pair<std::string, Budget>> runs = {
      {"normal-form", small_budget(2, 40, 31)},
      {"minimal-length", small_budget(2, 0, 31)},
      {"part1", small_budget(2, 0, 31)},
      {"part2", small_budget(1, 0, 31)},
      {"cyclic", small_budget(4, 25, 31)},
      {"normalizer", small_budget(2, 0, 31)},
      {"wreath", small_budget(4, 0, 31)},
  };
  for (const auto& [name, budget] : runs) {
    INFO("suite " << name);
    const SuiteReport first = verify_suite(name, budget);
    const SuiteReport second = verify_suite(name, budget);
    REQUIRE(same_report(first, second));
  }
}

TEST_CASE("a zero budget is reported as vacuous, never as a pass") {
  Budget zero;
  zero.max_count = 0;
  zero.trials = 0;
  for (const std::string& name : suite_names()) {
    INFO("suite " << name);
    const SuiteReport rep = verify_suite(name, zero);
    REQUIRE(rep.vacuous());
    REQUIRE(rep.tested == 0);
    REQUIRE(rep.failed == 0);
    REQUIRE(rep.line().find("vacuous=true") != std::string::npos);
  }
}

TEST_CASE("unknown suites are rejected by name") {
  REQUIRE_THROWS_WITH(verify_suite("bogus", Budget{}),
                      Catch::Matchers::ContainsSubstring("unknown suite"));
  REQUIRE_THROWS_AS(verify_suite("", Budget{}), Error);
}

TEST_CASE("the exhaustive suites respect the enumeration cap") {
  Budget capped;
  capped.max_syllables = 3;
  capped.max_count = 10;
  REQUIRE_THROWS_AS(suite_normal_form(capped), BudgetExhausted);
  REQUIRE_THROWS_AS(suite_minimal_length(capped), BudgetExhausted);
}

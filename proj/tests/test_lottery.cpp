#include <doctest.h>

#include <cmath>

#include "rps/errors.hpp"
#include "rps/lottery.hpp"
#include "rps/utility.hpp"
#include "test_support.hpp"

using namespace rps;

TEST_SUITE_BEGIN("lottery");

TEST_CASE("canonicalize merges duplicates and sorts") {
  Lottery merged = Lottery::from_outcomes({{0, 0.5}, {0, 0.25}, {1, 0.25}});
  REQUIRE(merged.size() == 2);
  CHECK(merged.outcomes()[0].payoff == 0.0);
  CHECK(merged.outcomes()[0].probability == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(merged.outcomes()[1].payoff == 1.0);
  CHECK(merged.outcomes()[1].probability == doctest::Approx(0.25).epsilon(1e-15));

  Lottery sure = Lottery::from_outcomes({{1, 1.0}});
  CHECK(sure.is_sure());
  CHECK(sure.outcomes()[0].payoff == 1.0);

  Lottery sorted = Lottery::from_outcomes({{2, 0.5}, {0, 0.5}});
  CHECK(sorted.outcomes()[0].payoff == 0.0);
  CHECK(sorted.outcomes()[1].payoff == 2.0);
}

TEST_CASE("canonicalize rejects bad input") {
  CHECK_THROWS_WITH_AS(Lottery::from_outcomes({{0, -0.1}, {1, 1.1}}),
                       doctest::Contains("NegativeProbability"), Error);
  CHECK_THROWS_WITH_AS(Lottery::from_outcomes({{0, 0.6}, {1, 0.6}}),
                       doctest::Contains("ProbabilitySumOutOfTolerance"), Error);
  CHECK_THROWS_WITH_AS(Lottery::from_outcomes({}),
                       doctest::Contains("EmptySupport"), Error);
  // zero-probability entries are dropped, not kept
  Lottery dropped = Lottery::from_outcomes({{0, 0.0}, {1, 1.0}});
  CHECK(dropped.size() == 1);
}

TEST_CASE("canonicalize is idempotent") {
  UniformRng rng(2024);
  for (int i = 0; i < 200; ++i) {
    Lottery lottery = test::random_lottery(rng);
    Lottery again = Lottery::from_outcomes(
        {lottery.outcomes().begin(), lottery.outcomes().end()});
    CHECK(again == lottery);
  }
}

TEST_CASE("mix composes supports with the right weights") {
  // 20% of a win-x two-pointer, 80% of the zero lottery
  double x = 0.4;
  Lottery l_x = Lottery::from_outcomes({{0, 1 - x}, {1, x}});
  Lottery zero = Lottery::sure(0.0);
  Lottery mixed = Lottery::mix(0.2, l_x, zero);
  REQUIRE(mixed.size() == 2);
  CHECK(mixed.outcomes()[0].payoff == 0.0);
  CHECK(mixed.outcomes()[0].probability ==
        doctest::Approx(1 - 0.2 * x).epsilon(1e-15));
  CHECK(mixed.outcomes()[1].probability ==
        doctest::Approx(0.2 * x).epsilon(1e-15));

  // degenerate weight returns the first component
  Lottery a = Lottery::from_outcomes({{1, 0.5}, {3, 0.5}});
  Lottery b = Lottery::sure(7.0);
  CHECK(Lottery::mix(1.0, a, b) == a);

  Lottery half = Lottery::mix(0.5, Lottery::sure(0.0), Lottery::sure(2.0));
  REQUIRE(half.size() == 2);
  CHECK(half.outcomes()[0].probability == doctest::Approx(0.5));
  CHECK(half.outcomes()[1].probability == doctest::Approx(0.5));
}

TEST_CASE("mix preserves expected utility linearly") {
  UniformRng rng(99);
  for (int i = 0; i < 200; ++i) {
    Lottery a = test::random_lottery(rng, 3, 0.0, 10.0);
    Lottery b = test::random_lottery(rng, 3, 0.0, 10.0);
    double w = rng.uniform();
    Lottery mixed = Lottery::mix(w, a, b);
    UtilityFn u = test::random_increasing_utility(rng);
    double expect = w * u.expected(a) + (1 - w) * u.expected(b);
    CHECK(std::abs(u.expected(mixed) - expect) <= 1e-12);
  }
}

TEST_CASE("expected utility on simple cases") {
  UtilityFn linear = UtilityFn::linear();
  CHECK(linear.expected(Lottery::from_outcomes({{0, 0.5}, {1, 0.5}})) ==
        doctest::Approx(0.5));
  CHECK(linear.expected(Lottery::from_outcomes({{0, 0.5}, {200, 0.5}})) ==
        doctest::Approx(100.0));
  UtilityFn log = UtilityFn::scaled_log(0.4);
  CHECK(log.expected(Lottery::sure(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fsd examples") {
  Lottery sure1 = Lottery::sure(1.0);
  Lottery even = Lottery::from_outcomes({{0, 0.5}, {1, 0.5}});
  CHECK(fsd_dominates(sure1, even));
  CHECK_FALSE(fsd_dominates(even, sure1));
  CHECK_FALSE(fsd_dominates(even, even));

  Lottery two = Lottery::from_outcomes({{0, 0.5}, {2, 0.5}});
  Lottery one = Lottery::from_outcomes({{0, 0.5}, {1, 0.5}});
  CHECK(fsd_dominates(two, one));
}

TEST_CASE("fsd is irreflexive and transitive") {
  UniformRng rng(555);
  for (int i = 0; i < 200; ++i) {
    Lottery c = test::random_lottery(rng);
    Lottery b = test::fsd_lift(rng, c);
    Lottery a = test::fsd_lift(rng, b);
    CHECK_FALSE(fsd_dominates(a, a));
    CHECK_FALSE(fsd_dominates(c, c));
    REQUIRE(fsd_dominates(a, b));
    REQUIRE(fsd_dominates(b, c));
    CHECK(fsd_dominates(a, c));
    // dominance is asymmetric
    CHECK_FALSE(fsd_dominates(c, a));
  }
}

TEST_CASE("expected utility is monotone under fsd") {
  UniformRng rng(321);
  for (int i = 0; i < 200; ++i) {
    Lottery b = test::random_lottery(rng);
    Lottery a = test::fsd_lift(rng, b);
    UtilityFn u = test::random_increasing_utility(rng);
    CHECK(u.expected(a) > u.expected(b));
  }
}

TEST_CASE("text format parses payoff,probability lines") {
  Lottery parsed = Lottery::parse(
      "# the even-odds double\n"
      "0, 0.5\n"
      "200, 0.5   # upside\n"
      "\n");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed.outcomes()[1].payoff == 200.0);

  CHECK_THROWS_WITH_AS(Lottery::parse("0 0.5\n"),
                       doctest::Contains("BadSpecString"), Error);
  CHECK_THROWS_WITH_AS(Lottery::parse("0,abc\n"),
                       doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(Lottery::parse("# nothing\n"),
                       doctest::Contains("EmptySupport"), Error);
}

TEST_CASE("inverse cdf sampling lands on the right outcomes") {
  Lottery lottery = Lottery::from_outcomes({{0, 0.25}, {1, 0.5}, {5, 0.25}});
  CHECK(lottery.sample(0.0) == 0.0);
  CHECK(lottery.sample(0.2499) == 0.0);
  CHECK(lottery.sample(0.25) == 1.0);
  CHECK(lottery.sample(0.7499) == 1.0);
  CHECK(lottery.sample(0.75) == 5.0);
  CHECK(lottery.sample(0.999999) == 5.0);

  CHECK(lottery.cdf(-1.0) == 0.0);
  CHECK(lottery.cdf(0.0) == doctest::Approx(0.25));
  CHECK(lottery.cdf(1.0) == doctest::Approx(0.75));
  CHECK(lottery.cdf(10.0) == 1.0);
}

TEST_SUITE_END();

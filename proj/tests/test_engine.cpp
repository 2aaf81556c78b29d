#include <doctest.h>

#include <cmath>

#include "rps/engine.hpp"
#include "rps/errors.hpp"
#include "test_support.hpp"

using namespace rps;

namespace {

const Lottery kSure100 = Lottery::sure(100.0);
const Lottery kEven200 = Lottery::from_outcomes({{0, 0.5}, {200, 0.5}});
const Lottery kEven210 = Lottery::from_outcomes({{0, 0.5}, {210, 0.5}});

ProspectPair identity_pair(const Lottery& a, const Lottery& b) {
  return ProspectPair::make(a, b, UtilityFn::linear(),
                            StimulusModel::identity());
}

}  // namespace

TEST_SUITE_BEGIN("engine");

TEST_CASE("decision probability ratios") {
  StimulusModel identity = StimulusModel::identity();
  CHECK(decision_probability(100, 100, identity) == doctest::Approx(0.5));
  CHECK(decision_probability(200, 100, identity) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  StimulusModel exp02 = StimulusModel::exponential(0.2);
  CHECK(decision_probability(0.1, 0.0, exp02) ==
        doctest::Approx(0.62245933120185459).epsilon(1e-15));

  CHECK_THROWS_WITH_AS(decision_probability(0, 0, identity),
                       doctest::Contains("ZeroTotalStimulus"), Error);
  CHECK_THROWS_WITH_AS(decision_probability(-1, 2, identity),
                       doctest::Contains("NegativeStimulus"), Error);
  // exponential accepts any reals
  CHECK(decision_probability(-5, -7, exp02) > 0.5);
}

TEST_CASE("decision probability is monotone in the stimuli") {
  StimulusModel exp1 = StimulusModel::exponential(1.0);
  UniformRng rng(11);
  for (int i = 0; i < 200; ++i) {
    double s_a = -5 + 10 * rng.uniform();
    double s_b = -5 + 10 * rng.uniform();
    double bump = 1e-6 + rng.uniform();
    CHECK(decision_probability(s_a + bump, s_b, exp1) >
          decision_probability(s_a, s_b, exp1));
    CHECK(decision_probability(s_a, s_b + bump, exp1) <
          decision_probability(s_a, s_b, exp1));
  }
}

TEST_CASE("sure bet beats the even-odds double of equal mean") {
  PreferenceOutcome out = rps1_sides(identity_pair(kSure100, kEven200));
  CHECK(std::abs(out.lhs - 1.0 / 3.0) <= 1e-12);
  CHECK(std::abs(out.rhs - 3.0 / 8.0) <= 1e-12);
  CHECK(out.relation == Relation::a_preferred);
}

TEST_CASE("sure bet still wins against a higher-mean gamble") {
  PreferenceOutcome out = rps1_sides(identity_pair(kSure100, kEven210));
  CHECK(out.lhs == doctest::Approx(21.0 / 61.0).epsilon(1e-15));
  CHECK(out.rhs == doctest::Approx(1240.0 / 3403.0).epsilon(1e-15));
  CHECK(out.relation == Relation::a_preferred);
  // yet the gamble has the higher expected value
  CHECK(UtilityFn::linear().expected(kEven210) == doctest::Approx(105.0));
}

TEST_CASE("identical prospects are indifferent") {
  PreferenceOutcome out = rps1_sides(identity_pair(kEven200, kEven200));
  CHECK(out.lhs == out.rhs);
  CHECK(out.relation == Relation::indifferent);

  ProspectPair exp_pair = ProspectPair::make(
      kEven200, kEven200, UtilityFn::linear(), StimulusModel::exponential(1.0));
  CHECK(rps1_sides(exp_pair).relation == Relation::indifferent);
}

TEST_CASE("stay form matches the complement of the switch form") {
  PreferenceOutcome stay = rps1_sides_stay_form(identity_pair(kSure100, kEven200));
  CHECK(std::abs(stay.lhs - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(stay.rhs - 5.0 / 8.0) <= 1e-12);
  CHECK(stay.relation == Relation::a_preferred);

  UniformRng rng(42);
  for (int i = 0; i < 300; ++i) {
    ProspectPair pair = identity_pair(test::random_lottery(rng),
                                      test::random_lottery(rng));
    PreferenceOutcome sw = rps1_sides(pair);
    PreferenceOutcome st = rps1_sides_stay_form(pair);
    CHECK(std::abs(st.lhs + sw.lhs - 1.0) <= 1e-12);
    CHECK(std::abs(st.rhs + sw.rhs - 1.0) <= 1e-12);
    CHECK(st.relation == sw.relation);
  }

  CHECK_THROWS_WITH_AS(
      rps1_sides_stay_form(ProspectPair::make(kSure100, kEven200,
                                              UtilityFn::linear(),
                                              StimulusModel::exponential(1.0))),
      doctest::Contains("DomainViolation"), Error);
}

TEST_CASE("two-state chain of the reference example") {
  MarkovModel chain = markov_model(identity_pair(kSure100, kEven200));
  CHECK(std::abs(chain.stay_a - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(chain.stay_b - 0.625) <= 1e-12);
  CHECK(chain.stationary_p == doctest::Approx(9.0 / 17.0).epsilon(1e-14));
  CHECK(chain.ergodic);

  MarkovModel same = markov_model(identity_pair(kEven200, kEven200));
  CHECK(same.stationary_p == doctest::Approx(0.5));
}

TEST_CASE("stationary pair solves the fixed-point equation") {
  UniformRng rng(77);
  for (int i = 0; i < 300; ++i) {
    ProspectPair pair = identity_pair(test::random_lottery(rng),
                                      test::random_lottery(rng));
    MarkovModel chain = markov_model(pair);
    double p = chain.stationary_p;
    double q = chain.stationary_q;
    CHECK(std::abs(p + q - 1.0) <= 1e-12);
    CHECK(std::abs(p - (chain.stay_a * p + (1.0 - chain.stay_b) * q)) <= 1e-12);

    // the long-run majority state matches the preference relation
    Relation rel = rps1_sides(pair).relation;
    if (rel == Relation::a_preferred) CHECK(p > 0.5);
    if (rel == Relation::b_preferred) CHECK(p < 0.5);
  }
}

TEST_CASE("absorbing chains are flagged, not rejected") {
  // the zero-prior side never attracts a switch
  MarkovModel chain = markov_model(identity_pair(Lottery::sure(1.0),
                                                 Lottery::sure(0.0)));
  CHECK(chain.stay_a == 1.0);
  CHECK(chain.stay_b == 0.0);
  CHECK(chain.stationary_p == 1.0);
  CHECK_FALSE(chain.ergodic);
}

TEST_CASE("baseline choice probability") {
  ProspectPair equal = ProspectPair::with_priors(
      kSure100, kEven200, UtilityFn::linear(), StimulusModel::identity(), 50, 50);
  CHECK(baseline_choice_probability(equal) == doctest::Approx(0.5));

  ProspectPair skew = ProspectPair::with_priors(
      kSure100, kEven210, UtilityFn::linear(), StimulusModel::identity(), 100, 105);
  CHECK(baseline_choice_probability(skew) ==
        doctest::Approx(100.0 / 205.0).epsilon(1e-15));

  ProspectPair corner = ProspectPair::with_priors(
      kSure100, kEven200, UtilityFn::linear(), StimulusModel::identity(), 1, 0);
  CHECK(baseline_choice_probability(corner) == 1.0);

  ProspectPair zero = ProspectPair::with_priors(
      kSure100, kEven200, UtilityFn::linear(), StimulusModel::identity(), 0, 0);
  CHECK_THROWS_WITH_AS(baseline_choice_probability(zero),
                       doctest::Contains("ZeroTotalStimulus"), Error);
}

TEST_CASE("dominant lotteries are preferred") {
  UniformRng rng(1234);
  int checked = 0;
  while (checked < 300) {
    Lottery b = test::random_lottery(rng);
    Lottery a = test::fsd_lift(rng, b);
    REQUIRE(fsd_dominates(a, b));
    UtilityFn u = test::random_increasing_utility(rng);
    ProspectPair pair =
        ProspectPair::make(a, b, u, StimulusModel::identity());
    CHECK(rps1_sides(pair).relation == Relation::a_preferred);
    ++checked;
  }
}

TEST_CASE("a utility shift can flip the relation") {
  // regression fixture: found by scanning offsets on the higher-mean gamble
  ProspectPair plain = identity_pair(kSure100, kEven210);
  CHECK(rps1_sides(plain).relation == Relation::a_preferred);

  ProspectPair shifted = ProspectPair::make(
      kSure100, kEven210, UtilityFn::shifted(UtilityFn::linear(), 100.0),
      StimulusModel::identity());
  CHECK(rps1_sides(shifted).relation == Relation::b_preferred);
}

TEST_CASE("sure prospects are totally ordered by value") {
  UniformRng rng(31);
  for (int i = 0; i < 200; ++i) {
    double b = 100.0 * rng.uniform();
    double a = b + 1e-6 + 100.0 * rng.uniform();
    ProspectPair pair = identity_pair(Lottery::sure(a), Lottery::sure(b));
    CHECK(rps1_sides(pair).relation == Relation::a_preferred);
  }
}

TEST_CASE("identity Phi validates stimuli eagerly") {
  ProspectPair negative = ProspectPair::with_priors(
      kSure100, kEven200, UtilityFn::linear(), StimulusModel::identity(), -1, 100);
  CHECK_THROWS_WITH_AS(rps1_sides(negative),
                       doctest::Contains("NegativeStimulus"), Error);

  ProspectPair zeros = identity_pair(Lottery::sure(0.0), Lottery::sure(0.0));
  CHECK_THROWS_WITH_AS(rps1_sides(zeros),
                       doctest::Contains("ZeroDenominator"), Error);

  // negative payoffs are fine under an exponential Phi
  ProspectPair losses = ProspectPair::make(
      Lottery::from_outcomes({{-2, 0.5}, {0, 0.5}}), Lottery::sure(-1.0),
      UtilityFn::linear(), StimulusModel::exponential(1.0));
  CHECK_NOTHROW(rps1_sides(losses));

  // utility domain failures propagate from inside the sums
  ProspectPair out_of_domain = ProspectPair::with_priors(
      Lottery::from_outcomes({{-1.5, 0.5}, {0, 0.5}}), Lottery::sure(0.0),
      UtilityFn::power(0.2), StimulusModel::exponential(1.0), 0.0, 0.0);
  CHECK_THROWS_WITH_AS(rps1_sides(out_of_domain),
                       doctest::Contains("DomainViolation"), Error);
}

TEST_CASE("prior overrides shift the comparison") {
  // same lotteries, but a pumped-up prior on b changes the outcome
  ProspectPair fresh = identity_pair(kSure100, kEven200);
  ProspectPair pumped = ProspectPair::with_priors(
      kSure100, kEven200, UtilityFn::linear(), StimulusModel::identity(),
      100.0, 400.0);
  CHECK(rps1_sides(fresh).relation == Relation::a_preferred);
  CHECK(rps1_sides(pumped).relation == Relation::b_preferred);
}

TEST_SUITE_END();

#include "rps/engine.hpp"

#include <cmath>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

namespace {

Relation relation_from_switch_sides(double lhs, double rhs) {
  if (lhs < rhs - kIndifferenceTol) return Relation::a_preferred;
  if (lhs > rhs + kIndifferenceTol) return Relation::b_preferred;
  return Relation::indifferent;
}

// Identity Phi works on raw stimuli: every evaluated stimulus must be
// non-negative and every compared pair must have a positive total. Checked
// eagerly over both supports before any summation.
void validate_identity_domain(const ProspectPair& pair) {
  if (!pair.stimulus.is_identity()) return;
  if (pair.prior_a < 0.0 || pair.prior_b < 0.0) {
    fail(ErrorCode::negative_stimulus,
         "negative prior stimulus (" + format_double(pair.prior_a) + ", " +
             format_double(pair.prior_b) + ")");
  }
  for (const Outcome& o : pair.a.outcomes()) {
    double s = pair.prior_a + pair.utility(o.payoff);
    if (s < 0.0) {
      fail(ErrorCode::negative_stimulus,
           "stimulus for payoff " + format_double(o.payoff) + " is negative");
    }
    if (pair.prior_b + s <= 0.0) {
      fail(ErrorCode::zero_denominator,
           "total stimulus vanishes at payoff " + format_double(o.payoff));
    }
  }
  for (const Outcome& o : pair.b.outcomes()) {
    double s = pair.prior_b + pair.utility(o.payoff);
    if (s < 0.0) {
      fail(ErrorCode::negative_stimulus,
           "stimulus for payoff " + format_double(o.payoff) + " is negative");
    }
    if (pair.prior_a + s <= 0.0) {
      fail(ErrorCode::zero_denominator,
           "total stimulus vanishes at payoff " + format_double(o.payoff));
    }
  }
}

}  // namespace

const char* to_string(Relation relation) {
  switch (relation) {
    case Relation::a_preferred: return "A_preferred";
    case Relation::b_preferred: return "B_preferred";
    case Relation::indifferent: return "indifferent";
  }
  return "?";
}

ProspectPair ProspectPair::make(Lottery a, Lottery b, UtilityFn utility,
                                StimulusModel stimulus) {
  double prior_a = utility.expected(a);
  double prior_b = utility.expected(b);
  return ProspectPair{std::move(a), std::move(b), std::move(utility),
                      std::move(stimulus), prior_a, prior_b};
}

ProspectPair ProspectPair::with_priors(Lottery a, Lottery b, UtilityFn utility,
                                       StimulusModel stimulus, double prior_a,
                                       double prior_b) {
  return ProspectPair{std::move(a), std::move(b), std::move(utility),
                      std::move(stimulus), prior_a, prior_b};
}

ProspectPair ProspectPair::swapped() const {
  return ProspectPair{b, a, utility, stimulus, prior_b, prior_a};
}

PreferenceOutcome rps1_sides(const ProspectPair& pair) {
  validate_identity_domain(pair);
  double lhs = 0.0;
  for (const Outcome& o : pair.a.outcomes()) {
    lhs += o.probability *
           pair.stimulus.share(pair.prior_b, pair.prior_a + pair.utility(o.payoff));
  }
  double rhs = 0.0;
  for (const Outcome& o : pair.b.outcomes()) {
    rhs += o.probability *
           pair.stimulus.share(pair.prior_a, pair.prior_b + pair.utility(o.payoff));
  }
  return {lhs, rhs, relation_from_switch_sides(lhs, rhs)};
}

PreferenceOutcome rps1_sides_stay_form(const ProspectPair& pair) {
  if (!pair.stimulus.is_identity()) {
    fail(ErrorCode::domain_violation,
         "stay-probability form is defined for identity Phi only");
  }
  validate_identity_domain(pair);
  double lhs = 0.0;
  for (const Outcome& o : pair.a.outcomes()) {
    double u = pair.utility(o.payoff);
    lhs += o.probability * (pair.prior_a + u) / (pair.prior_a + pair.prior_b + u);
  }
  double rhs = 0.0;
  for (const Outcome& o : pair.b.outcomes()) {
    double u = pair.utility(o.payoff);
    rhs += o.probability * (pair.prior_b + u) / (pair.prior_a + pair.prior_b + u);
  }
  // stay probabilities: larger own side wins
  Relation rel = relation_from_switch_sides(rhs, lhs);
  return {lhs, rhs, rel};
}

MarkovModel markov_model(const ProspectPair& pair) {
  validate_identity_domain(pair);
  double stay_a = 0.0;
  for (const Outcome& o : pair.a.outcomes()) {
    stay_a += o.probability *
              pair.stimulus.share(pair.prior_a + pair.utility(o.payoff), pair.prior_b);
  }
  double stay_b = 0.0;
  for (const Outcome& o : pair.b.outcomes()) {
    stay_b += o.probability *
              pair.stimulus.share(pair.prior_b + pair.utility(o.payoff), pair.prior_a);
  }

  MarkovModel model;
  model.stay_a = stay_a;
  model.stay_b = stay_b;
  model.ergodic = stay_a > 0.0 && stay_a < 1.0 && stay_b > 0.0 && stay_b < 1.0;

  double leave_a = 1.0 - stay_a;
  double leave_b = 1.0 - stay_b;
  if (leave_a + leave_b == 0.0) {
    // both states absorbing: any split is invariant; report the symmetric one
    model.stationary_p = 0.5;
  } else {
    model.stationary_p = leave_b / (leave_a + leave_b);
  }
  model.stationary_q = 1.0 - model.stationary_p;
  return model;
}

double baseline_choice_probability(const ProspectPair& pair) {
  return pair.stimulus.share(pair.prior_a, pair.prior_b);
}

}  // namespace rps

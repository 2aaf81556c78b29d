#pragma once

#include "rps/lottery.hpp"
#include "rps/stimulus.hpp"
#include "rps/utility.hpp"

namespace rps {

/// Two sides closer than this are treated as genuine indifference.
inline constexpr double kIndifferenceTol = 1e-12;

enum class Relation { a_preferred, b_preferred, indifferent };

const char* to_string(Relation relation);

struct ProspectPair {
  Lottery a;
  Lottery b;
  UtilityFn utility;
  StimulusModel stimulus;
  double prior_a;  // default stimulus level for a
  double prior_b;

  /// Priors freshly computed as the expected utilities of a and b.
  static ProspectPair make(Lottery a, Lottery b, UtilityFn utility,
                           StimulusModel stimulus);

  /// Overrides the default priors (fixed-prior analyses).
  static ProspectPair with_priors(Lottery a, Lottery b, UtilityFn utility,
                                  StimulusModel stimulus, double prior_a,
                                  double prior_b);

  ProspectPair swapped() const;
};

/// lhs/rhs hold the two expectations being compared. For rps1_sides these
/// are expected switch-away probabilities (smaller is better for the own
/// side); for the stay form they are expected stay probabilities.
struct PreferenceOutcome {
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::indifferent;
};

/// lhs = E_X[ Phi(U_b) / (Phi(U_b) + Phi(U_a + U(X))) ]
/// rhs = E_Y[ Phi(U_a) / (Phi(U_a) + Phi(U_b + U(Y))) ]
/// a preferred iff lhs < rhs beyond the indifference tolerance.
PreferenceOutcome rps1_sides(const ProspectPair& pair);

/// Stay-probability form, identity Phi only:
/// lhs = E_X[ (U_a + U(X)) / (U_a + U_b + U(X)) ], rhs symmetric;
/// a preferred iff lhs > rhs. Always the complement of rps1_sides.
PreferenceOutcome rps1_sides_stay_form(const ProspectPair& pair);

/// Two-state chain over {a, b} for the k=1 iterated choice process.
struct MarkovModel {
  double stay_a = 0.0;   // P(next = a | current = a)
  double stay_b = 0.0;
  double stationary_p = 0.0;  // invariant probability of state a
  double stationary_q = 0.0;
  bool ergodic = true;   // false when a stay probability hits 0 or 1
};

MarkovModel markov_model(const ProspectPair& pair);

/// Phi(prior_a) / (Phi(prior_a) + Phi(prior_b)): the no-history mixed
/// strategy over the two prospects.
double baseline_choice_probability(const ProspectPair& pair);

}  // namespace rps

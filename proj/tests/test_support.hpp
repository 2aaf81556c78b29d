#pragma once

#include <vector>

#include "rps/engine.hpp"
#include "rps/simulator.hpp"

namespace rps::test {

// Deterministic generators for property-style tests. All tests seed their
// own UniformRng so failures replay exactly.

inline Lottery random_lottery(UniformRng& rng, std::size_t max_points = 3,
                              double payoff_low = 0.0,
                              double payoff_high = 100.0) {
  std::size_t n = 2 + static_cast<std::size_t>(rng.uniform() *
                                               static_cast<double>(max_points - 1));
  std::vector<Outcome> raw(n);
  for (Outcome& o : raw) {
    o.payoff = payoff_low + (payoff_high - payoff_low) * rng.uniform();
    o.probability = 0.05 + 0.95 * rng.uniform();
  }
  double sum = 0.0;
  for (const Outcome& o : raw) sum += o.probability;
  for (Outcome& o : raw) o.probability /= sum;
  return Lottery::from_outcomes(std::move(raw));
}

// Strictly FSD-dominating lift: either shifts every payoff up by a common
// positive amount or moves probability mass from the lowest payoff to the
// highest one.
inline Lottery fsd_lift(UniformRng& rng, const Lottery& base) {
  std::vector<Outcome> raw(base.outcomes().begin(), base.outcomes().end());
  if (rng.uniform() < 0.5 || raw.size() < 2) {
    double shift = 0.5 + 5.0 * rng.uniform();
    for (Outcome& o : raw) o.payoff += shift;
  } else {
    double eps = raw.front().probability * (0.2 + 0.6 * rng.uniform());
    raw.front().probability -= eps;
    raw.back().probability += eps;
  }
  return Lottery::from_outcomes(std::move(raw));
}

inline UtilityFn random_increasing_utility(UniformRng& rng) {
  double pick = rng.uniform();
  if (pick < 1.0 / 3.0) return UtilityFn::linear();
  if (pick < 2.0 / 3.0) return UtilityFn::power(0.1 + 0.9 * rng.uniform());
  return UtilityFn::scaled_log(0.1 + 2.0 * rng.uniform());
}

}  // namespace rps::test

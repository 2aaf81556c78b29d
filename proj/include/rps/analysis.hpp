#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "rps/engine.hpp"
#include "rps/simulator.hpp"

namespace rps {

struct SolverSettings {
  double bracket_low = 0.0;   // low == high requests the payoff range
  double bracket_high = 0.0;
  double tolerance = 1e-10;   // bracket width, money units
  int max_iterations = 200;
};

/// Sure amount c with sure-c ~ L under the RPS(1) rule: bisection on the
/// residual r(c) = lhs - rhs of rps1_sides(sure-c, L). The bracket expands
/// to [min payoff, max payoff] before NoSignChange is raised.
double certainty_equivalent(const Lottery& lottery, const UtilityFn& utility,
                            const StimulusModel& phi,
                            SolverSettings settings = {});

/// Sure amount with U(c) = E[U(L)] (the EU benchmark curve).
double eu_certainty_equivalent(const Lottery& lottery,
                               const UtilityFn& utility,
                               SolverSettings settings = {});

enum class RiskAttitude { conservative, risk_seeking, neutral };

const char* to_string(RiskAttitude attitude);

/// Risk-neutral (linear U) CE-vs-EU comparison under an exponential Phi.
/// Non-negative lotteries come out conservative (CE < EU), non-positive
/// risk_seeking (CE > EU), sure lotteries neutral. Mixed-sign payoffs raise
/// MixedSignPayoffs.
RiskAttitude risk_attitude_check(const Lottery& lottery,
                                 const StimulusModel& phi);

/// The two-point lottery families behind the certainty-equivalent sweeps:
/// gains pays {0, 1}, losses pays {-1, 0}; x is the probability of the
/// nonzero payoff.
enum class TwoPointFamily { gains, losses };

Lottery family_lottery(TwoPointFamily family, double x);

struct CurvePoint {
  double c = 0.0;        // solved sure payoff
  double x = 0.0;        // lottery parameter
  char side = 'c';       // which coordinate was solved for
  double residual = 0.0; // |lhs - rhs| at the solution
  bool ok = false;       // false when the solve failed at this grid point
};

using Curve = std::vector<CurvePoint>;

/// n uniform points spanning [0,1] inclusive.
std::vector<double> uniform_grid(std::size_t n);

/// CE per grid x. Degenerate or unsolvable points are marked ok = false
/// rather than aborting the sweep.
Curve indifference_curve(TwoPointFamily family, const UtilityFn& utility,
                         const StimulusModel& phi,
                         const std::vector<double>& grid_x,
                         SolverSettings settings = {});

enum class PreferenceRule { rps1, expected_utility };

struct AllaisResult {
  Curve boundary_plain;    // sure-c ~ L_x
  Curve boundary_diluted;  // mix(w, sure-c, L0) ~ mix(w, L_x, L0)
  std::vector<double> axis;     // shared c and x axis
  std::vector<std::uint8_t> in_region;  // [ix * n + ic], 1 = reversal holds
  std::size_t region_count = 0;
  std::size_t failed_points = 0;        // grid points whose comparison is degenerate
  double mix_weight = 0.0;
};

/// Preference-reversal region of the diluted-choice experiment: points where
/// sure-c beats L_x undiluted but the mixed comparison flips.
AllaisResult allais_region(const UtilityFn& utility, const StimulusModel& phi,
                           double mix_weight, std::size_t grid_n,
                           PreferenceRule rule = PreferenceRule::rps1);

struct IndependenceWitness {
  double c = 0.0;
  double x = 0.0;
  double mix_weight = 0.0;
  PreferenceOutcome undiluted;  // sure-c vs L_x (a preferred)
  PreferenceOutcome diluted;    // mixed sure-c vs mixed L_x (b preferred)
};

/// First grid point (deterministic scan order) inside the reversal region,
/// with both evaluations attached for machine re-checking.
std::optional<IndependenceWitness> independence_violation_witness(
    const UtilityFn& utility, const StimulusModel& phi, double mix_weight,
    std::size_t grid_n, PreferenceRule rule = PreferenceRule::rps1);

enum class SearchSpace { sure_only, two_and_three_point };

struct CycleWitness {
  Lottery x, y, z;
  PreferenceOutcome xy, yz, zx;  // strict cycle x > y > z > x
};

struct CommonCeWitness {
  Lottery x, y;       // equal expected utility
  double c = 0.0;     // sure amount indifferent to both
  PreferenceOutcome cx, cy;  // both indifferent
  PreferenceOutcome xy;      // strictly not indifferent
};

using IntransitivityWitness = std::variant<CycleWitness, CommonCeWitness>;

/// Randomized search (linear U, identity Phi, non-negative payoffs) for a
/// strict preference cycle or a common-certainty-equivalent pair. Every
/// candidate is re-verified by direct functional evaluation before it is
/// returned; an exhausted budget yields nullopt.
std::optional<IntransitivityWitness> intransitivity_witness(
    std::uint64_t search_budget, std::uint64_t seed,
    SearchSpace space = SearchSpace::two_and_three_point,
    PreferenceRule rule = PreferenceRule::rps1);

struct KConvergenceRow {
  std::size_t k = 0;
  double freq_a = 0.0;
  Relation relation = Relation::indifferent;
  bool inconclusive = true;
  double confidence = 0.0;
};

struct KConvergenceParams {
  std::uint64_t steps_per_replication = 111'111;
  unsigned replications = 9;
  std::uint64_t seed = 0;
  double alpha = 0.01;
};

/// frequency_preference per window size; stream k_index feeds replication
/// streams so every cell of the table is independently seeded.
std::vector<KConvergenceRow> k_convergence_experiment(
    const ProspectPair& pair, const std::vector<std::size_t>& k_values,
    const KConvergenceParams& params);

}  // namespace rps

#include "rps/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

namespace {

struct BisectResult {
  double root = 0.0;
  double residual = 0.0;
};

// Plain bisection. Endpoints that raise domain errors are nudged inward by
// growing fractions of the bracket before giving up; a zero at an endpoint
// counts as the root.
BisectResult bisect(const std::function<double(double)>& f, double lo,
                    double hi, const SolverSettings& settings) {
  if (!(settings.tolerance > 0.0)) {
    fail(ErrorCode::domain_violation, "solver tolerance must be positive");
  }
  if (settings.max_iterations < 1) {
    fail(ErrorCode::domain_violation, "solver needs at least one iteration");
  }
  if (lo > hi) {
    fail(ErrorCode::domain_violation, "bracket low exceeds bracket high");
  }

  double range = hi - lo;
  auto eval_endpoint = [&](double v, bool from_low) {
    static constexpr double kNudges[] = {0.0, 1e-15, 1e-12, 1e-9, 1e-6};
    for (double nudge : kNudges) {
      double candidate = from_low ? v + nudge * range : v - nudge * range;
      try {
        return std::pair<double, double>(candidate, f(candidate));
      } catch (const Error&) {
        if (nudge == kNudges[std::size(kNudges) - 1]) throw;
      }
    }
    fail(ErrorCode::domain_violation, "unreachable");
  };

  if (lo == hi) {
    double r = f(lo);
    if (std::abs(r) <= 1e-9) return {lo, r};
    fail(ErrorCode::no_sign_change,
         "degenerate bracket at " + format_double(lo) + " has residual " +
             format_double(r));
  }

  auto [lo_pt, flo] = eval_endpoint(lo, true);
  auto [hi_pt, fhi] = eval_endpoint(hi, false);
  lo = lo_pt;
  hi = hi_pt;
  if (flo == 0.0) return {lo, 0.0};
  if (fhi == 0.0) return {hi, 0.0};
  if ((flo < 0.0) == (fhi < 0.0)) {
    fail(ErrorCode::no_sign_change,
         "residual has equal signs at bracket ends: r(" + format_double(lo) +
             ")=" + format_double(flo) + ", r(" + format_double(hi) +
             ")=" + format_double(fhi));
  }

  // shrink to the width tolerance, then keep halving until the best
  // endpoint's residual is negligible or the bracket hits float resolution
  constexpr double kResidualTarget = 1e-12;
  int iterations = 0;
  while (hi - lo > settings.tolerance ||
         std::min(std::abs(flo), std::abs(fhi)) > kResidualTarget) {
    if (iterations++ >= settings.max_iterations) {
      if (hi - lo > settings.tolerance) {
        fail(ErrorCode::non_convergence,
             "bracket width " + format_double(hi - lo) + " after " +
                 std::to_string(settings.max_iterations) + " iterations");
      }
      break;
    }
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  // report the better endpoint
  if (std::abs(flo) <= std::abs(fhi)) return {lo, flo};
  return {hi, fhi};
}

double rps_indifference_residual(double c, const Lottery& lottery,
                                 const UtilityFn& utility,
                                 const StimulusModel& phi, double prior_l) {
  ProspectPair pair = ProspectPair::with_priors(
      Lottery::sure(c), lottery, utility, phi, utility(c), prior_l);
  PreferenceOutcome out = rps1_sides(pair);
  return out.lhs - out.rhs;
}

BisectResult solve_rps_ce(const Lottery& lottery, const UtilityFn& utility,
                          const StimulusModel& phi, SolverSettings settings) {
  double prior_l = utility.expected(lottery);
  auto residual = [&](double c) {
    return rps_indifference_residual(c, lottery, utility, phi, prior_l);
  };

  bool user_bracket = settings.bracket_low != settings.bracket_high;
  double lo = user_bracket ? settings.bracket_low : lottery.min_payoff();
  double hi = user_bracket ? settings.bracket_high : lottery.max_payoff();
  try {
    return bisect(residual, lo, hi, settings);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::no_sign_change || !user_bracket) throw;
    // expand a failed user bracket to the payoff range before giving up
    double wide_lo = std::min(lo, lottery.min_payoff());
    double wide_hi = std::max(hi, lottery.max_payoff());
    if (wide_lo == lo && wide_hi == hi) throw;
    return bisect(residual, wide_lo, wide_hi, settings);
  }
}

Relation compare(PreferenceRule rule, const Lottery& a, const Lottery& b,
                 const UtilityFn& utility, const StimulusModel& phi,
                 PreferenceOutcome* outcome = nullptr) {
  if (rule == PreferenceRule::rps1) {
    PreferenceOutcome out =
        rps1_sides(ProspectPair::make(a, b, utility, phi));
    if (outcome) *outcome = out;
    return out.relation;
  }
  double ea = utility.expected(a);
  double eb = utility.expected(b);
  Relation rel = Relation::indifferent;
  if (ea > eb + kIndifferenceTol) rel = Relation::a_preferred;
  if (eb > ea + kIndifferenceTol) rel = Relation::b_preferred;
  if (outcome) *outcome = {ea, eb, rel};
  return rel;
}

// Preference reversal under common dilution at one (c, x) grid point.
bool reversal_at(const UtilityFn& utility, const StimulusModel& phi,
                 double mix_weight, double c, double x, PreferenceRule rule,
                 PreferenceOutcome* undiluted, PreferenceOutcome* diluted) {
  Lottery sure_c = Lottery::sure(c);
  Lottery l_x = family_lottery(TwoPointFamily::gains, x);
  Lottery zero = Lottery::sure(0.0);

  PreferenceOutcome plain;
  if (compare(rule, sure_c, l_x, utility, phi, &plain) !=
      Relation::a_preferred) {
    return false;
  }
  PreferenceOutcome mixed;
  Relation diluted_rel =
      compare(rule, Lottery::mix(mix_weight, sure_c, zero),
              Lottery::mix(mix_weight, l_x, zero), utility, phi, &mixed);
  if (diluted_rel != Relation::b_preferred) return false;
  if (undiluted) *undiluted = plain;
  if (diluted) *diluted = mixed;
  return true;
}

}  // namespace

const char* to_string(RiskAttitude attitude) {
  switch (attitude) {
    case RiskAttitude::conservative: return "conservative";
    case RiskAttitude::risk_seeking: return "risk_seeking";
    case RiskAttitude::neutral: return "neutral";
  }
  return "?";
}

double certainty_equivalent(const Lottery& lottery, const UtilityFn& utility,
                            const StimulusModel& phi, SolverSettings settings) {
  return solve_rps_ce(lottery, utility, phi, settings).root;
}

double eu_certainty_equivalent(const Lottery& lottery, const UtilityFn& utility,
                               SolverSettings settings) {
  double target = utility.expected(lottery);
  bool user_bracket = settings.bracket_low != settings.bracket_high;
  double lo = user_bracket ? settings.bracket_low : lottery.min_payoff();
  double hi = user_bracket ? settings.bracket_high : lottery.max_payoff();
  return bisect([&](double c) { return utility(c) - target; }, lo, hi, settings)
      .root;
}

RiskAttitude risk_attitude_check(const Lottery& lottery,
                                 const StimulusModel& phi) {
  if (!phi.is_exponential()) {
    fail(ErrorCode::domain_violation,
         "risk attitude check requires an exponential Phi");
  }
  if (lottery.min_payoff() < 0.0 && lottery.max_payoff() > 0.0) {
    fail(ErrorCode::mixed_sign_payoffs,
         "payoffs span both signs; comparison is not defined");
  }
  if (lottery.is_sure()) return RiskAttitude::neutral;

  UtilityFn linear = UtilityFn::linear();
  double expected = linear.expected(lottery);
  double ce = certainty_equivalent(lottery, linear, phi);
  double scale = std::max(1.0, std::abs(expected));
  if (std::abs(ce - expected) <= 1e-12 * scale) return RiskAttitude::neutral;
  return ce < expected ? RiskAttitude::conservative : RiskAttitude::risk_seeking;
}

Lottery family_lottery(TwoPointFamily family, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    fail(ErrorCode::domain_violation,
         "family parameter " + format_double(x) + " outside [0,1]");
  }
  if (family == TwoPointFamily::gains) {
    return Lottery::from_outcomes({{0.0, 1.0 - x}, {1.0, x}});
  }
  return Lottery::from_outcomes({{-1.0, x}, {0.0, 1.0 - x}});
}

std::vector<double> uniform_grid(std::size_t n) {
  if (n < 2) {
    fail(ErrorCode::domain_violation, "grid needs at least two points");
  }
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

Curve indifference_curve(TwoPointFamily family, const UtilityFn& utility,
                         const StimulusModel& phi,
                         const std::vector<double>& grid_x,
                         SolverSettings settings) {
  Curve curve;
  curve.reserve(grid_x.size());
  for (double x : grid_x) {
    CurvePoint point;
    point.x = x;
    try {
      Lottery lottery = family_lottery(family, x);
      BisectResult solved = solve_rps_ce(lottery, utility, phi, settings);
      point.c = solved.root;
      point.residual = std::abs(solved.residual);
      point.ok = true;
    } catch (const Error&) {
      point.c = std::numeric_limits<double>::quiet_NaN();
      point.residual = std::numeric_limits<double>::quiet_NaN();
      point.ok = false;
    }
    curve.push_back(point);
  }
  return curve;
}

AllaisResult allais_region(const UtilityFn& utility, const StimulusModel& phi,
                           double mix_weight, std::size_t grid_n,
                           PreferenceRule rule) {
  if (!(mix_weight > 0.0 && mix_weight <= 1.0)) {
    fail(ErrorCode::domain_violation,
         "mix weight " + format_double(mix_weight) + " outside (0,1]");
  }
  AllaisResult result;
  result.mix_weight = mix_weight;
  result.axis = uniform_grid(grid_n);

  Lottery zero = Lottery::sure(0.0);

  // boundary 1: sure-c ~ L_x, solved on interior x only (the endpoints are
  // degenerate comparisons whose limits are the corners of the square)
  for (double x : result.axis) {
    if (x <= 0.0 || x >= 1.0) continue;
    CurvePoint point;
    point.x = x;
    try {
      Lottery l_x = family_lottery(TwoPointFamily::gains, x);
      BisectResult solved =
          rule == PreferenceRule::rps1
              ? solve_rps_ce(l_x, utility, phi, {})
              : BisectResult{eu_certainty_equivalent(l_x, utility), 0.0};
      point.c = solved.root;
      point.residual = std::abs(solved.residual);
      point.ok = true;
    } catch (const Error&) {
      point.ok = false;
    }
    result.boundary_plain.push_back(point);
  }

  // boundary 2: mix(w, sure-c, L0) ~ mix(w, L_x, L0)
  for (double x : result.axis) {
    if (x <= 0.0 || x >= 1.0) continue;
    CurvePoint point;
    point.x = x;
    try {
      Lottery l_x = family_lottery(TwoPointFamily::gains, x);
      Lottery mixed_x = Lottery::mix(mix_weight, l_x, zero);
      double prior_mixed = utility.expected(mixed_x);
      auto residual = [&](double c) {
        Lottery mixed_c = Lottery::mix(mix_weight, Lottery::sure(c), zero);
        if (rule == PreferenceRule::expected_utility) {
          return utility.expected(mixed_c) - prior_mixed;
        }
        ProspectPair pair = ProspectPair::with_priors(
            mixed_c, mixed_x, utility, phi, utility.expected(mixed_c),
            prior_mixed);
        PreferenceOutcome out = rps1_sides(pair);
        return out.lhs - out.rhs;
      };
      BisectResult solved = bisect(residual, 0.0, 1.0, {});
      point.c = solved.root;
      point.residual = std::abs(solved.residual);
      point.ok = true;
    } catch (const Error&) {
      point.ok = false;
    }
    result.boundary_diluted.push_back(point);
  }

  result.in_region.assign(grid_n * grid_n, 0);
  for (std::size_t ix = 0; ix < grid_n; ++ix) {
    for (std::size_t ic = 0; ic < grid_n; ++ic) {
      bool in = false;
      try {
        in = reversal_at(utility, phi, mix_weight, result.axis[ic],
                         result.axis[ix], rule, nullptr, nullptr);
      } catch (const Error&) {
        ++result.failed_points;
      }
      if (in) {
        result.in_region[ix * grid_n + ic] = 1;
        ++result.region_count;
      }
    }
  }
  return result;
}

std::optional<IndependenceWitness> independence_violation_witness(
    const UtilityFn& utility, const StimulusModel& phi, double mix_weight,
    std::size_t grid_n, PreferenceRule rule) {
  std::vector<double> axis = uniform_grid(grid_n);
  for (double x : axis) {
    for (double c : axis) {
      IndependenceWitness witness;
      witness.c = c;
      witness.x = x;
      witness.mix_weight = mix_weight;
      try {
        if (reversal_at(utility, phi, mix_weight, c, x, rule,
                        &witness.undiluted, &witness.diluted)) {
          return witness;
        }
      } catch (const Error&) {
        // degenerate grid point; keep scanning
      }
    }
  }
  return std::nullopt;
}

namespace {

Lottery random_lottery(UniformRng& rng, SearchSpace space) {
  if (space == SearchSpace::sure_only) {
    return Lottery::sure(0.5 + 9.5 * rng.uniform());
  }
  std::size_t n = rng.uniform() < 0.5 ? 2 : 3;
  std::vector<Outcome> raw(n);
  for (Outcome& o : raw) {
    o.payoff = 0.5 + 9.5 * rng.uniform();
    o.probability = 0.05 + 0.95 * rng.uniform();
  }
  double sum = 0.0;
  for (const Outcome& o : raw) sum += o.probability;
  for (Outcome& o : raw) o.probability /= sum;
  return Lottery::from_outcomes(std::move(raw));
}

double witness_ce(const Lottery& lottery, const UtilityFn& utility,
                  const StimulusModel& phi, PreferenceRule rule) {
  if (rule == PreferenceRule::expected_utility) {
    return utility.expected(lottery);  // linear utility
  }
  SolverSettings tight;
  tight.tolerance = 1e-15;
  return certainty_equivalent(lottery, utility, phi, tight);
}

}  // namespace

std::optional<IntransitivityWitness> intransitivity_witness(
    std::uint64_t search_budget, std::uint64_t seed, SearchSpace space,
    PreferenceRule rule) {
  UtilityFn linear = UtilityFn::linear();
  StimulusModel identity = StimulusModel::identity();
  UniformRng rng(UniformRng::stream_seed(seed, 0));

  std::uint64_t budget = search_budget;

  // phase 1: cheap scan for a strict three-cycle
  std::uint64_t cycle_probes = std::min<std::uint64_t>(budget / 4, 1000);
  for (std::uint64_t probe = 0; probe < cycle_probes; ++probe) {
    --budget;
    Lottery x = random_lottery(rng, space);
    Lottery y = random_lottery(rng, space);
    Lottery z = random_lottery(rng, space);
    Relation rxy = compare(rule, x, y, linear, identity);
    Relation ryz = compare(rule, y, z, linear, identity);
    Relation rzx = compare(rule, z, x, linear, identity);
    bool forward = rxy == Relation::a_preferred &&
                   ryz == Relation::a_preferred &&
                   rzx == Relation::a_preferred;
    bool backward = rxy == Relation::b_preferred &&
                    ryz == Relation::b_preferred &&
                    rzx == Relation::b_preferred;
    if (!forward && !backward) continue;
    if (backward) std::swap(x, z);  // orient the cycle as x > y > z > x
    // re-verify from scratch before returning
    CycleWitness witness{x, y, z, {}, {}, {}};
    if (compare(rule, x, y, linear, identity, &witness.xy) ==
            Relation::a_preferred &&
        compare(rule, y, z, linear, identity, &witness.yz) ==
            Relation::a_preferred &&
        compare(rule, z, x, linear, identity, &witness.zx) ==
            Relation::a_preferred) {
      return IntransitivityWitness(witness);
    }
  }

  // phase 2: equal-mean pair sharing one certainty equivalent. A candidate X
  // fixes c = CE(X); a two-point family with the same mean is then spread
  // until its CE crosses c.
  while (budget > 0) {
    --budget;
    Lottery x = random_lottery(rng, space);
    double pi = 0.15 + 0.7 * rng.uniform();
    if (x.max_payoff() - x.min_payoff() < 0.5) continue;

    double mean = linear.expected(x);
    double c;
    try {
      c = witness_ce(x, linear, identity, rule);
    } catch (const Error&) {
      continue;
    }
    if (mean - c < 1e-3) continue;  // too close to a sure bet to separate

    auto spread_lottery = [&](double s) {
      return Lottery::from_outcomes(
          {{mean - s * pi, 1.0 - pi}, {mean + s * (1.0 - pi), pi}});
    };
    double s_max = 0.999 * mean / pi;
    try {
      if (witness_ce(spread_lottery(s_max), linear, identity, rule) >= c) {
        continue;
      }
      double lo = 1e-9, hi = s_max;
      double flo = witness_ce(spread_lottery(lo), linear, identity, rule) - c;
      double fhi = witness_ce(spread_lottery(hi), linear, identity, rule) - c;
      if ((flo < 0.0) == (fhi < 0.0)) continue;
      for (int iter = 0; iter < 200; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        double fm = witness_ce(spread_lottery(mid), linear, identity, rule) - c;
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
          fhi = fm;
        }
      }
      Lottery y = spread_lottery(0.5 * (lo + hi));

      // full verification by direct functional evaluation
      CommonCeWitness witness{x, y, c, {}, {}, {}};
      Lottery sure_c = Lottery::sure(c);
      Relation rcx = compare(rule, sure_c, x, linear, identity, &witness.cx);
      Relation rcy = compare(rule, sure_c, y, linear, identity, &witness.cy);
      Relation rxy = compare(rule, x, y, linear, identity, &witness.xy);
      bool means_match =
          std::abs(linear.expected(x) - linear.expected(y)) <= 1e-9;
      bool clear_gap = std::abs(witness.xy.lhs - witness.xy.rhs) > 1e-9;
      if (rcx == Relation::indifferent && rcy == Relation::indifferent &&
          rxy != Relation::indifferent && means_match && clear_gap) {
        return IntransitivityWitness(witness);
      }
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

std::vector<KConvergenceRow> k_convergence_experiment(
    const ProspectPair& pair, const std::vector<std::size_t>& k_values,
    const KConvergenceParams& params) {
  std::vector<KConvergenceRow> rows;
  rows.reserve(k_values.size());
  for (std::size_t i = 0; i < k_values.size(); ++i) {
    SimConfig config = SimConfig::make(pair, k_values[i],
                                       params.steps_per_replication,
                                       UniformRng::stream_seed(params.seed, i));
    FrequencyPreference pref =
        frequency_preference(config, params.replications, params.alpha);
    rows.push_back({k_values[i], pref.mean_freq_a, pref.relation,
                    pref.inconclusive, pref.confidence});
  }
  return rows;
}

}  // namespace rps

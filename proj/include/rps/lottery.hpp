#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

namespace rps {

struct Outcome {
  double payoff = 0.0;
  double probability = 0.0;

  bool operator==(const Outcome&) const = default;
};

/// Finite discrete distribution over monetary payoffs.
///
/// Canonical form: payoffs strictly increasing, every probability > 0,
/// probabilities renormalized to sum to 1. Immutable after construction.
class Lottery {
 public:
  /// Canonicalizes a raw outcome list: merges duplicate payoffs, sorts,
  /// drops zero-probability entries, renormalizes. Input probabilities must
  /// be non-negative and sum to 1 within 1e-9.
  static Lottery from_outcomes(std::vector<Outcome> raw);

  static Lottery sure(double payoff);

  /// weight * a + (1 - weight) * b, outcome-wise.
  static Lottery mix(double weight, const Lottery& a, const Lottery& b);

  /// Text format: one "payoff,probability" pair per line, '#' comments.
  static Lottery parse(std::string_view text);
  static Lottery load(const std::filesystem::path& path);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }
  bool is_sure() const { return outcomes_.size() == 1; }

  double min_payoff() const { return outcomes_.front().payoff; }
  double max_payoff() const { return outcomes_.back().payoff; }

  /// P(payoff <= v).
  double cdf(double v) const;

  /// Inverse-CDF draw; u in [0,1).
  double sample(double u) const;

  bool operator==(const Lottery& other) const = default;

 private:
  explicit Lottery(std::vector<Outcome> canonical);

  std::vector<Outcome> outcomes_;
  std::vector<double> cumulative_;
};

/// First-order stochastic dominance: CDF_a <= CDF_b everywhere on the union
/// of supports, strictly somewhere.
bool fsd_dominates(const Lottery& a, const Lottery& b);

}  // namespace rps

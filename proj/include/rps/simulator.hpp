#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rps/engine.hpp"

namespace rps {

/// Deterministic uniform stream. Streams are derived from a master seed by
/// splitmix64 mixing; every epoch consumes exactly two draws (choice then
/// payoff), so replication r of a config is reproducible in isolation.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : state_(seed) {}

  /// Next double in [0,1): top 53 bits of a splitmix64 output.
  double uniform();
  std::uint64_t next_u64();

  static std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream);

 private:
  std::uint64_t state_;
};

struct SimConfig {
  ProspectPair pair;
  std::size_t window_k = 1;    // 0 = unbounded window
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;   // epochs dropped from the statistics
  std::uint64_t seed = 0;

  /// burn_in defaults to 1% of steps.
  static SimConfig make(ProspectPair pair, std::size_t window_k,
                        std::uint64_t steps, std::uint64_t seed);
};

/// Sliding-window bookkeeping for the stimuli
///   S = prior + (1/n) * sum of window utilities of the chosen epochs,
/// with the average term defined as 0 when the lottery is absent from the
/// window.
class SimState {
 public:
  SimState(const ProspectPair& pair, std::size_t window_k);

  double stimulus_a() const;
  double stimulus_b() const;

  /// Fresh O(k) recomputation from the stored window; the incremental value
  /// must agree within 1e-9.
  double recompute_stimulus_a() const;
  double recompute_stimulus_b() const;

  std::size_t count_a() const { return n_a_; }
  std::size_t count_b() const { return n_b_; }
  std::uint64_t epochs() const { return epochs_; }

  void record(bool chose_a, double payoff, double payoff_utility);

 private:
  void refresh_sums();

  struct WindowEntry {
    bool chose_a;
    double payoff;
    double payoff_utility;
  };

  std::size_t window_k_;  // 0 = unbounded
  double prior_a_;
  double prior_b_;
  std::vector<WindowEntry> ring_;
  std::size_t head_ = 0;  // oldest entry when the ring is full
  double sum_a_ = 0.0;
  double sum_b_ = 0.0;
  std::size_t n_a_ = 0;
  std::size_t n_b_ = 0;
  std::uint64_t epochs_ = 0;
  std::uint64_t since_refresh_ = 0;
};

struct EpochRecord {
  std::uint64_t epoch;
  bool chose_a;
  double payoff;
  double s_a;
  double s_b;
  double lambda_a;
};

/// Advances one epoch: lambda_a from the current stimuli, choice from
/// u_choice, payoff by inverse CDF on u_payoff, window pushed.
EpochRecord step(SimState& state, const SimConfig& config, double u_choice,
                 double u_payoff);

struct SimReport {
  double freq_a = 0.0;
  double freq_b = 0.0;
  std::uint64_t counted = 0;       // epochs past burn-in
  std::uint64_t count_a = 0;
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  // empirical transition counts (post burn-in), for stay-probability checks
  std::uint64_t from_a = 0;
  std::uint64_t stay_a = 0;
  std::uint64_t from_b = 0;
  std::uint64_t stay_b = 0;
};

using TrajectorySink = std::function<void(const EpochRecord&)>;

SimReport run(const SimConfig& config, const TrajectorySink& sink = nullptr);

struct FrequencyPreference {
  Relation relation = Relation::indifferent;
  bool inconclusive = true;  // sign test fails at the requested level
  double p_value = 1.0;      // exact two-sided sign test across replications
  double confidence = 0.0;   // 1 - p_value
  double mean_freq_a = 0.5;
  unsigned votes_a = 0;
  unsigned votes_b = 0;
  unsigned replications = 0;
};

/// Runs independent replications (stream r = stream_seed(seed, r)) in
/// parallel and aggregates a majority relation with an exact two-sided
/// binomial sign test on freq_a > 0.5 per replication.
FrequencyPreference frequency_preference(const SimConfig& config,
                                         unsigned replications,
                                         double alpha = 0.01);

}  // namespace rps

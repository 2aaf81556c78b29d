#include "rps/simulator.hpp"

#include <cmath>
#include <future>

#include "rps/errors.hpp"

namespace rps {

namespace {

// Incremental window sums are rebuilt from scratch this often to keep
// float drift far below the 1e-9 bookkeeping contract.
constexpr std::uint64_t kRefreshInterval = 4096;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Exact two-sided sign test against p = 1/2.
double sign_test_p_value(unsigned wins, unsigned losses) {
  unsigned n = wins + losses;
  if (n == 0) return 1.0;
  unsigned m = std::min(wins, losses);
  long double tail = 0.0L;
  long double binom = 1.0L;  // C(n, 0)
  for (unsigned j = 0; j <= m; ++j) {
    tail += binom;
    binom = binom * static_cast<long double>(n - j) / static_cast<long double>(j + 1);
  }
  long double p = 2.0L * std::ldexp(tail, -static_cast<int>(n));
  return p > 1.0L ? 1.0 : static_cast<double>(p);
}

}  // namespace

double UniformRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t UniformRng::next_u64() { return splitmix64(state_); }

std::uint64_t UniformRng::stream_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t state = master ^ (0x9E3779B97F4A7C15ull * (stream + 1));
  return splitmix64(state);
}

SimConfig SimConfig::make(ProspectPair pair, std::size_t window_k,
                          std::uint64_t steps, std::uint64_t seed) {
  SimConfig config{std::move(pair), window_k, steps, steps / 100, seed};
  return config;
}

SimState::SimState(const ProspectPair& pair, std::size_t window_k)
    : window_k_(window_k), prior_a_(pair.prior_a), prior_b_(pair.prior_b) {
  if (window_k_ > 0) ring_.reserve(window_k_);
}

double SimState::stimulus_a() const {
  return prior_a_ + (n_a_ > 0 ? sum_a_ / static_cast<double>(n_a_) : 0.0);
}

double SimState::stimulus_b() const {
  return prior_b_ + (n_b_ > 0 ? sum_b_ / static_cast<double>(n_b_) : 0.0);
}

double SimState::recompute_stimulus_a() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const WindowEntry& e : ring_) {
    if (e.chose_a) {
      sum += e.payoff_utility;
      ++n;
    }
  }
  return prior_a_ + (n > 0 ? sum / static_cast<double>(n) : 0.0);
}

double SimState::recompute_stimulus_b() const {
  double sum = 0.0;
  std::size_t n = 0;
  for (const WindowEntry& e : ring_) {
    if (!e.chose_a) {
      sum += e.payoff_utility;
      ++n;
    }
  }
  return prior_b_ + (n > 0 ? sum / static_cast<double>(n) : 0.0);
}

void SimState::record(bool chose_a, double payoff, double payoff_utility) {
  if (window_k_ > 0 && ring_.size() == window_k_) {
    const WindowEntry& old = ring_[head_];
    if (old.chose_a) {
      sum_a_ -= old.payoff_utility;
      --n_a_;
    } else {
      sum_b_ -= old.payoff_utility;
      --n_b_;
    }
    ring_[head_] = {chose_a, payoff, payoff_utility};
    head_ = (head_ + 1) % window_k_;
  } else {
    ring_.push_back({chose_a, payoff, payoff_utility});
  }
  if (chose_a) {
    sum_a_ += payoff_utility;
    ++n_a_;
  } else {
    sum_b_ += payoff_utility;
    ++n_b_;
  }
  ++epochs_;
  if (window_k_ > 0 && ++since_refresh_ >= kRefreshInterval) {
    refresh_sums();
  }
}

void SimState::refresh_sums() {
  double sa = 0.0, sb = 0.0;
  for (const WindowEntry& e : ring_) {
    (e.chose_a ? sa : sb) += e.payoff_utility;
  }
  sum_a_ = sa;
  sum_b_ = sb;
  since_refresh_ = 0;
}

EpochRecord step(SimState& state, const SimConfig& config, double u_choice,
                 double u_payoff) {
  double s_a = state.stimulus_a();
  double s_b = state.stimulus_b();
  double lambda_a = decision_probability(s_a, s_b, config.pair.stimulus);
  bool chose_a = u_choice < lambda_a;
  const Lottery& chosen = chose_a ? config.pair.a : config.pair.b;
  double payoff = chosen.sample(u_payoff);
  double payoff_utility = config.pair.utility(payoff);
  EpochRecord record{state.epochs(), chose_a, payoff, s_a, s_b, lambda_a};
  state.record(chose_a, payoff, payoff_utility);
  return record;
}

SimReport run(const SimConfig& config, const TrajectorySink& sink) {
  if (config.steps == 0 || config.burn_in >= config.steps) {
    fail(ErrorCode::domain_violation,
         "simulation requires steps > burn_in >= 0");
  }
  UniformRng rng(config.seed);
  SimState state(config.pair, config.window_k);

  SimReport report;
  report.steps = config.steps;
  report.burn_in = config.burn_in;

  bool have_prev = false;
  bool prev_chose_a = false;
  for (std::uint64_t i = 0; i < config.steps; ++i) {
    double u_choice = rng.uniform();
    double u_payoff = rng.uniform();
    EpochRecord rec = step(state, config, u_choice, u_payoff);
    if (sink) sink(rec);

    if (i >= config.burn_in) {
      ++report.counted;
      if (rec.chose_a) ++report.count_a;
      if (have_prev) {
        if (prev_chose_a) {
          ++report.from_a;
          if (rec.chose_a) ++report.stay_a;
        } else {
          ++report.from_b;
          if (!rec.chose_a) ++report.stay_b;
        }
      }
      have_prev = true;
      prev_chose_a = rec.chose_a;
    }
  }

  report.freq_a = static_cast<double>(report.count_a) /
                  static_cast<double>(report.counted);
  report.freq_b = 1.0 - report.freq_a;
  return report;
}

FrequencyPreference frequency_preference(const SimConfig& config,
                                         unsigned replications, double alpha) {
  if (replications == 0) {
    fail(ErrorCode::domain_violation, "replications must be >= 1");
  }
  std::vector<std::future<SimReport>> futures;
  futures.reserve(replications);
  for (unsigned r = 0; r < replications; ++r) {
    SimConfig rep = config;
    rep.seed = UniformRng::stream_seed(config.seed, r);
    futures.push_back(
        std::async(std::launch::async, [rep]() { return run(rep); }));
  }

  FrequencyPreference result;
  result.replications = replications;
  double freq_sum = 0.0;
  for (auto& f : futures) {
    SimReport report = f.get();
    freq_sum += report.freq_a;
    if (report.freq_a > 0.5) {
      ++result.votes_a;
    } else if (report.freq_a < 0.5) {
      ++result.votes_b;
    }
  }
  result.mean_freq_a = freq_sum / replications;
  result.p_value = sign_test_p_value(result.votes_a, result.votes_b);
  result.confidence = 1.0 - result.p_value;
  if (result.votes_a > result.votes_b) {
    result.relation = Relation::a_preferred;
  } else if (result.votes_b > result.votes_a) {
    result.relation = Relation::b_preferred;
  } else {
    result.relation = Relation::indifferent;
  }
  result.inconclusive =
      result.votes_a == result.votes_b || result.p_value > alpha;
  return result;
}

}  // namespace rps

#include "rps/lottery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

namespace {

constexpr double kSumTolerance = 1e-9;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_number(std::string_view field, std::size_t line_no) {
  field = trim(field);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    fail(ErrorCode::bad_spec_string,
         "line " + std::to_string(line_no) + ": cannot parse number '" +
             std::string(field) + "'");
  }
  return value;
}

}  // namespace

Lottery::Lottery(std::vector<Outcome> canonical) : outcomes_(std::move(canonical)) {
  cumulative_.reserve(outcomes_.size());
  double acc = 0.0;
  for (const Outcome& o : outcomes_) {
    acc += o.probability;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;  // guard inverse-CDF draws against round-off
}

Lottery Lottery::from_outcomes(std::vector<Outcome> raw) {
  if (raw.empty()) {
    fail(ErrorCode::empty_support, "lottery has no outcomes");
  }
  double sum = 0.0;
  for (const Outcome& o : raw) {
    if (!std::isfinite(o.payoff) || !std::isfinite(o.probability)) {
      fail(ErrorCode::domain_violation, "non-finite outcome entry");
    }
    if (o.probability < 0.0) {
      fail(ErrorCode::negative_probability,
           "probability " + format_double(o.probability) + " at payoff " +
               format_double(o.payoff));
    }
    sum += o.probability;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    fail(ErrorCode::probability_sum_out_of_tolerance,
         "probabilities sum to " + format_double(sum));
  }

  std::sort(raw.begin(), raw.end(), [](const Outcome& a, const Outcome& b) {
    return a.payoff < b.payoff;
  });

  std::vector<Outcome> merged;
  merged.reserve(raw.size());
  for (const Outcome& o : raw) {
    if (!merged.empty() && merged.back().payoff == o.payoff) {
      merged.back().probability += o.probability;
    } else {
      merged.push_back(o);
    }
  }
  std::erase_if(merged, [](const Outcome& o) { return o.probability == 0.0; });
  if (merged.empty()) {
    fail(ErrorCode::empty_support, "all outcomes have zero probability");
  }

  // Renormalize only when the sum is genuinely off; skipping the division
  // for already-normalized input makes canonicalization an exact fixed
  // point. The last probability absorbs the division round-off so totals
  // come out to 1 exactly.
  double merged_sum = 0.0;
  for (const Outcome& o : merged) merged_sum += o.probability;
  if (std::abs(merged_sum - 1.0) > 1e-14) {
    for (Outcome& o : merged) o.probability /= merged_sum;
    double partial = 0.0;
    for (std::size_t i = 0; i + 1 < merged.size(); ++i) {
      partial += merged[i].probability;
    }
    double last = 1.0 - partial;
    if (last > 0.0) merged.back().probability = last;
  }

  return Lottery(std::move(merged));
}

Lottery Lottery::sure(double payoff) {
  return from_outcomes({{payoff, 1.0}});
}

Lottery Lottery::mix(double weight, const Lottery& a, const Lottery& b) {
  if (!(weight >= 0.0 && weight <= 1.0)) {
    fail(ErrorCode::domain_violation,
         "mixture weight " + format_double(weight) + " outside [0,1]");
  }
  std::vector<Outcome> raw;
  raw.reserve(a.size() + b.size());
  for (const Outcome& o : a.outcomes()) {
    raw.push_back({o.payoff, weight * o.probability});
  }
  for (const Outcome& o : b.outcomes()) {
    raw.push_back({o.payoff, (1.0 - weight) * o.probability});
  }
  return from_outcomes(std::move(raw));
}

Lottery Lottery::parse(std::string_view text) {
  std::vector<Outcome> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
      fail(ErrorCode::bad_spec_string,
           "line " + std::to_string(line_no) + ": expected 'payoff,probability'");
    }
    double payoff = parse_number(line.substr(0, comma), line_no);
    double probability = parse_number(line.substr(comma + 1), line_no);
    raw.push_back({payoff, probability});
  }
  return from_outcomes(std::move(raw));
}

Lottery Lottery::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    fail(ErrorCode::missing_input, "cannot open lottery file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

double Lottery::cdf(double v) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < outcomes_.size(); ++i) {
    if (outcomes_[i].payoff > v) break;
    acc = cumulative_[i];
  }
  return acc;
}

double Lottery::sample(double u) const {
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  std::size_t idx = static_cast<std::size_t>(it - cumulative_.begin());
  if (idx >= outcomes_.size()) idx = outcomes_.size() - 1;
  return outcomes_[idx].payoff;
}

bool fsd_dominates(const Lottery& a, const Lottery& b) {
  // cumulative probabilities carry the same 1e-12 slack as the sum invariant
  constexpr double kCdfTol = 1e-12;
  std::vector<double> support;
  support.reserve(a.size() + b.size());
  for (const Outcome& o : a.outcomes()) support.push_back(o.payoff);
  for (const Outcome& o : b.outcomes()) support.push_back(o.payoff);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  bool strict = false;
  for (double v : support) {
    double fa = a.cdf(v);
    double fb = b.cdf(v);
    if (fa > fb + kCdfTol) return false;
    if (fa < fb - kCdfTol) strict = true;
  }
  return strict;
}

}  // namespace rps

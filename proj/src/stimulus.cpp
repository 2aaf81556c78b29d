#include "rps/stimulus.hpp"

#include <cmath>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

StimulusModel StimulusModel::identity() { return StimulusModel(false, 0.0); }

StimulusModel StimulusModel::exponential(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    fail(ErrorCode::domain_violation,
         "stimulus scale must be positive, got " + format_double(scale));
  }
  return StimulusModel(true, scale);
}

double StimulusModel::share(double s_own, double s_other) const {
  if (!exponential_) {
    if (s_own < 0.0 || s_other < 0.0) {
      fail(ErrorCode::negative_stimulus,
           "identity Phi requires non-negative stimuli, got (" +
               format_double(s_own) + ", " + format_double(s_other) + ")");
    }
    double total = s_own + s_other;
    if (total <= 0.0) {
      fail(ErrorCode::zero_total_stimulus, "both stimuli are zero");
    }
    return s_own / total;
  }
  // logistic of the difference; immune to exp overflow
  double z = (s_own - s_other) / scale_;
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  double e = std::exp(z);
  return e / (1.0 + e);
}

std::string StimulusModel::describe() const {
  return exponential_ ? "exp:" + format_double(scale_) : "identity";
}

double decision_probability(double s_a, double s_b, const StimulusModel& phi) {
  return phi.share(s_a, s_b);
}

}  // namespace rps

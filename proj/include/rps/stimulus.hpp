#pragma once

#include <string>

namespace rps {

/// The transform Phi applied to stimuli before forming choice probabilities.
///
/// identity:     Phi(x) = x, valid only for non-negative stimuli with a
///               strictly positive total per comparison.
/// exponential:  Phi(x) = e^{x/d}, d > 0, valid for any real stimulus.
class StimulusModel {
 public:
  static StimulusModel identity();
  static StimulusModel exponential(double scale);

  bool is_identity() const { return !exponential_; }
  bool is_exponential() const { return exponential_; }
  double scale() const { return scale_; }

  /// Phi(s_own) / (Phi(s_own) + Phi(s_other)). The exponential form is
  /// evaluated as a logistic of the difference, so it never overflows.
  double share(double s_own, double s_other) const;

  std::string describe() const;  // "identity" or "exp:<d>"

 private:
  StimulusModel(bool exponential, double scale)
      : exponential_(exponential), scale_(scale) {}

  bool exponential_;
  double scale_;
};

/// Probability of picking the first option given the two stimuli.
double decision_probability(double s_a, double s_b, const StimulusModel& phi);

}  // namespace rps

#pragma once

#include <string>

#include "rps/lottery.hpp"

namespace rps {

/// Parametric VNM utility. Closed family set plus an additive offset so
/// framing shifts U(x) -> U(x) + a stay inside the type.
///
///   linear      U(x) = x
///   power       U(x) = (1+x)^alpha - 1,          alpha > 0, x >= -1
///   scaled_log  U(x) = log(1+r*x) / log(1+r),    r > 0, x > -1/r
class UtilityFn {
 public:
  enum class Family { linear, power, scaled_log };

  static UtilityFn linear();
  static UtilityFn power(double alpha);
  static UtilityFn scaled_log(double rate);
  static UtilityFn shifted(const UtilityFn& base, double offset);

  /// Evaluates the utility; throws DomainViolation outside the family domain.
  double operator()(double payoff) const;

  /// Sum of p_i * U(v_i) over the lottery's outcomes.
  double expected(const Lottery& lottery) const;

  Family family() const { return family_; }
  double param() const { return param_; }
  double offset() const { return offset_; }

  /// Spec-string form: "linear", "power:0.2", "log:0.4",
  /// "shift:<base>:<offset>" when the offset is nonzero.
  std::string describe() const;

 private:
  UtilityFn(Family family, double param, double offset);

  Family family_;
  double param_;
  double offset_;
};

}  // namespace rps

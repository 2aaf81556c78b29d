#include "rps/utility.hpp"

#include <cmath>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

UtilityFn::UtilityFn(Family family, double param, double offset)
    : family_(family), param_(param), offset_(offset) {}

UtilityFn UtilityFn::linear() { return UtilityFn(Family::linear, 0.0, 0.0); }

UtilityFn UtilityFn::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    fail(ErrorCode::domain_violation,
         "power exponent must be positive, got " + format_double(alpha));
  }
  return UtilityFn(Family::power, alpha, 0.0);
}

UtilityFn UtilityFn::scaled_log(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    fail(ErrorCode::domain_violation,
         "log rate must be positive, got " + format_double(rate));
  }
  return UtilityFn(Family::scaled_log, rate, 0.0);
}

UtilityFn UtilityFn::shifted(const UtilityFn& base, double offset) {
  if (!std::isfinite(offset)) {
    fail(ErrorCode::domain_violation, "non-finite utility offset");
  }
  return UtilityFn(base.family_, base.param_, base.offset_ + offset);
}

double UtilityFn::operator()(double payoff) const {
  if (!std::isfinite(payoff)) {
    fail(ErrorCode::domain_violation, "non-finite payoff");
  }
  switch (family_) {
    case Family::linear:
      return payoff + offset_;
    case Family::power: {
      double base = 1.0 + payoff;
      if (base < 0.0) {
        fail(ErrorCode::domain_violation,
             "payoff " + format_double(payoff) + " below -1 for power utility");
      }
      return std::pow(base, param_) - 1.0 + offset_;
    }
    case Family::scaled_log: {
      double arg = param_ * payoff;
      if (arg <= -1.0) {
        fail(ErrorCode::domain_violation,
             "payoff " + format_double(payoff) + " outside log utility domain");
      }
      return std::log1p(arg) / std::log1p(param_) + offset_;
    }
  }
  fail(ErrorCode::domain_violation, "unreachable utility family");
}

double UtilityFn::expected(const Lottery& lottery) const {
  double acc = 0.0;
  for (const Outcome& o : lottery.outcomes()) {
    acc += o.probability * (*this)(o.payoff);
  }
  return acc;
}

std::string UtilityFn::describe() const {
  std::string base;
  switch (family_) {
    case Family::linear:
      base = "linear";
      break;
    case Family::power:
      base = "power:" + format_double(param_);
      break;
    case Family::scaled_log:
      base = "log:" + format_double(param_);
      break;
  }
  if (offset_ != 0.0) {
    return "shift:" + base + ":" + format_double(offset_);
  }
  return base;
}

}  // namespace rps

#pragma once

#include <stdexcept>
#include <string>

namespace rps {

enum class ErrorCode {
  negative_probability,
  probability_sum_out_of_tolerance,
  empty_support,
  domain_violation,
  zero_total_stimulus,
  negative_stimulus,
  zero_denominator,
  no_sign_change,
  non_convergence,
  mixed_sign_payoffs,
  unknown_command,
  bad_spec_string,
  missing_input,
};

const char* to_string(ErrorCode code);

/// Library error carrying a stable machine-readable code plus context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& context)
      : std::runtime_error(std::string(to_string(code)) + ": " + context),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& context) {
  throw Error(code, context);
}

}  // namespace rps

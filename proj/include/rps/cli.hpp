#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rps/analysis.hpp"

namespace rps::cli {

enum class Command { compare, simulate, ce, curve, allais, witness, kconv };

struct RunConfig {
  Command command = Command::compare;

  std::string lottery_a;  // file paths
  std::string lottery_b;
  std::string lottery;

  std::string utility_spec = "linear";
  std::string phi_spec = "identity";

  std::uint64_t seed = 0;
  std::uint64_t steps = 100'000;
  std::optional<std::uint64_t> burn_in;  // default 1% of steps
  std::size_t k = 1;                     // 0 = unbounded window
  std::vector<std::size_t> k_values;     // kconv
  unsigned replications = 9;
  double alpha = 0.01;

  double weight = 0.2;    // allais dilution weight on the original lottery
  std::size_t grid = 101;
  std::uint64_t budget = 100'000;
  std::string witness_kind = "intransitivity";  // or "independence"
  TwoPointFamily family = TwoPointFamily::gains;

  std::optional<double> bracket_low;
  std::optional<double> bracket_high;

  std::string out_path;       // empty = derive from the configuration
  std::string format = "csv"; // csv | json
};

/// Raised when --help is requested; carries the usage text.
struct HelpRequested {
  std::string text;
};

/// "linear" | "power:<alpha>" | "log:<rate>" | "shift:<base...>:<offset>".
UtilityFn parse_utility_spec(std::string_view spec);

/// "identity" | "exp:<scale>".
StimulusModel parse_phi_spec(std::string_view spec);

/// args excludes the program name. Throws Error(UnknownCommand /
/// BadSpecString / MissingInput) on invalid input.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs the command, writes declared artifacts, prints the one-line summary
/// to `out`. Returns the process exit status (0 on success).
int execute(const RunConfig& config, std::ostream& out);

}  // namespace rps::cli

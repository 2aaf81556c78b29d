#pragma once

#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "rps/analysis.hpp"

namespace rps {

using Json = nlohmann::ordered_json;

Json lottery_to_json(const Lottery& lottery);
Lottery lottery_from_json(const Json& j);

Json outcome_to_json(const PreferenceOutcome& outcome);

// Curve files: columns c, x, side, residual. Failed grid points carry no
// solution and are omitted from the records (counts surface in summaries).
void write_curve_csv(std::ostream& os, const Curve& curve);
Json curve_to_json(const Curve& curve);

// Region mask: columns c, x, in_region.
void write_region_csv(std::ostream& os, const AllaisResult& result);
Json allais_to_json(const AllaisResult& result);

void write_kconv_csv(std::ostream& os, const std::vector<KConvergenceRow>& rows);
Json kconv_to_json(const std::vector<KConvergenceRow>& rows);

// Per-epoch simulation log: columns epoch, chosen, payoff, S_a, S_b, lambda_a.
void write_trajectory_header(std::ostream& os);
void write_trajectory_row(std::ostream& os, const EpochRecord& record);

Json intransitivity_witness_to_json(const IntransitivityWitness& witness);
std::optional<IntransitivityWitness> intransitivity_witness_from_json(const Json& j);

Json independence_witness_to_json(const IndependenceWitness& witness);

/// JSON documents carry the run configuration alongside the records.
Json with_config_echo(Json config, Json payload);

}  // namespace rps

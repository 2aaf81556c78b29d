#include "rps/output.hpp"

#include <ostream>

#include "rps/errors.hpp"
#include "rps/format.hpp"

namespace rps {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::negative_probability: return "NegativeProbability";
    case ErrorCode::probability_sum_out_of_tolerance:
      return "ProbabilitySumOutOfTolerance";
    case ErrorCode::empty_support: return "EmptySupport";
    case ErrorCode::domain_violation: return "DomainViolation";
    case ErrorCode::zero_total_stimulus: return "ZeroTotalStimulus";
    case ErrorCode::negative_stimulus: return "NegativeStimulus";
    case ErrorCode::zero_denominator: return "ZeroDenominator";
    case ErrorCode::no_sign_change: return "NoSignChange";
    case ErrorCode::non_convergence: return "NonConvergence";
    case ErrorCode::mixed_sign_payoffs: return "MixedSignPayoffs";
    case ErrorCode::unknown_command: return "UnknownCommand";
    case ErrorCode::bad_spec_string: return "BadSpecString";
    case ErrorCode::missing_input: return "MissingInput";
  }
  return "UnknownError";
}

Json lottery_to_json(const Lottery& lottery) {
  Json outcomes = Json::array();
  for (const Outcome& o : lottery.outcomes()) {
    outcomes.push_back(Json::array({o.payoff, o.probability}));
  }
  return Json{{"outcomes", std::move(outcomes)}};
}

Lottery lottery_from_json(const Json& j) {
  std::vector<Outcome> raw;
  for (const auto& entry : j.at("outcomes")) {
    raw.push_back({entry.at(0).get<double>(), entry.at(1).get<double>()});
  }
  return Lottery::from_outcomes(std::move(raw));
}

Json outcome_to_json(const PreferenceOutcome& outcome) {
  return Json{{"lhs", outcome.lhs},
              {"rhs", outcome.rhs},
              {"relation", to_string(outcome.relation)}};
}

void write_curve_csv(std::ostream& os, const Curve& curve) {
  os << "c,x,side,residual\n";
  for (const CurvePoint& p : curve) {
    if (!p.ok) continue;
    os << format_double(p.c) << ',' << format_double(p.x) << ',' << p.side
       << ',' << format_double(p.residual) << '\n';
  }
}

Json curve_to_json(const Curve& curve) {
  Json points = Json::array();
  for (const CurvePoint& p : curve) {
    if (!p.ok) continue;
    points.push_back(Json{{"c", p.c},
                          {"x", p.x},
                          {"side", std::string(1, p.side)},
                          {"residual", p.residual}});
  }
  return points;
}

void write_region_csv(std::ostream& os, const AllaisResult& result) {
  os << "c,x,in_region\n";
  const std::size_t n = result.axis.size();
  for (std::size_t ix = 0; ix < n; ++ix) {
    for (std::size_t ic = 0; ic < n; ++ic) {
      os << format_double(result.axis[ic]) << ','
         << format_double(result.axis[ix]) << ','
         << int(result.in_region[ix * n + ic]) << '\n';
    }
  }
}

Json allais_to_json(const AllaisResult& result) {
  Json cells = Json::array();
  const std::size_t n = result.axis.size();
  for (std::size_t ix = 0; ix < n; ++ix) {
    for (std::size_t ic = 0; ic < n; ++ic) {
      if (!result.in_region[ix * n + ic]) continue;
      cells.push_back(Json{{"c", result.axis[ic]}, {"x", result.axis[ix]}});
    }
  }
  return Json{{"mix_weight", result.mix_weight},
              {"grid", n},
              {"region_count", result.region_count},
              {"failed_points", result.failed_points},
              {"boundary_plain", curve_to_json(result.boundary_plain)},
              {"boundary_diluted", curve_to_json(result.boundary_diluted)},
              {"region_cells", std::move(cells)}};
}

void write_kconv_csv(std::ostream& os, const std::vector<KConvergenceRow>& rows) {
  os << "k,freq_a,relation,confidence,inconclusive\n";
  for (const KConvergenceRow& row : rows) {
    os << row.k << ',' << format_double(row.freq_a) << ','
       << to_string(row.relation) << ',' << format_double(row.confidence)
       << ',' << int(row.inconclusive) << '\n';
  }
}

Json kconv_to_json(const std::vector<KConvergenceRow>& rows) {
  Json out = Json::array();
  for (const KConvergenceRow& row : rows) {
    out.push_back(Json{{"k", row.k},
                       {"freq_a", row.freq_a},
                       {"relation", to_string(row.relation)},
                       {"confidence", row.confidence},
                       {"inconclusive", row.inconclusive}});
  }
  return out;
}

void write_trajectory_header(std::ostream& os) {
  os << "epoch,chosen,payoff,S_a,S_b,lambda_a\n";
}

void write_trajectory_row(std::ostream& os, const EpochRecord& record) {
  os << record.epoch << ',' << (record.chose_a ? 'a' : 'b') << ','
     << format_double(record.payoff) << ',' << format_double(record.s_a) << ','
     << format_double(record.s_b) << ',' << format_double(record.lambda_a)
     << '\n';
}

Json intransitivity_witness_to_json(const IntransitivityWitness& witness) {
  if (const auto* cycle = std::get_if<CycleWitness>(&witness)) {
    return Json{{"kind", "cycle"},
                {"x", lottery_to_json(cycle->x)},
                {"y", lottery_to_json(cycle->y)},
                {"z", lottery_to_json(cycle->z)},
                {"xy", outcome_to_json(cycle->xy)},
                {"yz", outcome_to_json(cycle->yz)},
                {"zx", outcome_to_json(cycle->zx)}};
  }
  const auto& common = std::get<CommonCeWitness>(witness);
  return Json{{"kind", "common_ce"},
              {"x", lottery_to_json(common.x)},
              {"y", lottery_to_json(common.y)},
              {"c", common.c},
              {"cx", outcome_to_json(common.cx)},
              {"cy", outcome_to_json(common.cy)},
              {"xy", outcome_to_json(common.xy)}};
}

std::optional<IntransitivityWitness> intransitivity_witness_from_json(
    const Json& j) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "none") return std::nullopt;
  if (kind == "cycle") {
    CycleWitness witness{lottery_from_json(j.at("x")),
                         lottery_from_json(j.at("y")),
                         lottery_from_json(j.at("z")),
                         {},
                         {},
                         {}};
    return IntransitivityWitness(witness);
  }
  if (kind == "common_ce") {
    CommonCeWitness witness{lottery_from_json(j.at("x")),
                            lottery_from_json(j.at("y")),
                            j.at("c").get<double>(),
                            {},
                            {},
                            {}};
    return IntransitivityWitness(witness);
  }
  fail(ErrorCode::bad_spec_string, "unknown witness kind '" + kind + "'");
}

Json independence_witness_to_json(const IndependenceWitness& witness) {
  return Json{{"kind", "independence"},
              {"c", witness.c},
              {"x", witness.x},
              {"mix_weight", witness.mix_weight},
              {"undiluted", outcome_to_json(witness.undiluted)},
              {"diluted", outcome_to_json(witness.diluted)}};
}

Json with_config_echo(Json config, Json payload) {
  Json document;
  document["config"] = std::move(config);
  document["result"] = std::move(payload);
  return document;
}

}  // namespace rps

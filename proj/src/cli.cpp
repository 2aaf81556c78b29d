#include "rps/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "rps/errors.hpp"
#include "rps/format.hpp"
#include "rps/output.hpp"

namespace rps::cli {

namespace {

double parse_spec_number(std::string_view token, std::string_view spec) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    fail(ErrorCode::bad_spec_string,
         "cannot parse number '" + std::string(token) + "' in spec '" +
             std::string(spec) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

std::string sanitize_for_filename(std::string spec) {
  std::replace(spec.begin(), spec.end(), ':', '-');
  return spec;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string general12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    fail(ErrorCode::missing_input, "cannot open output file " + path);
  }
  return os;
}

Json config_echo(const RunConfig& config, std::string_view command_name) {
  Json echo;
  echo["command"] = std::string(command_name);
  if (!config.lottery_a.empty()) echo["a"] = config.lottery_a;
  if (!config.lottery_b.empty()) echo["b"] = config.lottery_b;
  if (!config.lottery.empty()) echo["lottery"] = config.lottery;
  echo["utility"] = config.utility_spec;
  echo["phi"] = config.phi_spec;
  switch (config.command) {
    case Command::simulate:
      echo["k"] = config.k;
      echo["steps"] = config.steps;
      echo["burn_in"] = config.burn_in ? Json(*config.burn_in) : Json(nullptr);
      echo["seed"] = config.seed;
      break;
    case Command::kconv:
      echo["k"] = config.k_values;
      echo["steps"] = config.steps;
      echo["replications"] = config.replications;
      echo["alpha"] = config.alpha;
      echo["seed"] = config.seed;
      break;
    case Command::allais:
      echo["weight"] = config.weight;
      echo["grid"] = config.grid;
      break;
    case Command::curve:
      echo["family"] =
          config.family == TwoPointFamily::gains ? "gains" : "losses";
      echo["grid"] = config.grid;
      break;
    case Command::witness:
      echo["kind"] = config.witness_kind;
      if (config.witness_kind == "intransitivity") {
        echo["budget"] = config.budget;
        echo["seed"] = config.seed;
      } else {
        echo["weight"] = config.weight;
        echo["grid"] = config.grid;
      }
      break;
    default:
      break;
  }
  return echo;
}

struct LoadedPair {
  ProspectPair pair;
};

LoadedPair load_pair(const RunConfig& config) {
  if (config.lottery_a.empty() || config.lottery_b.empty()) {
    fail(ErrorCode::missing_input, "both --a and --b lottery files are required");
  }
  Lottery a = Lottery::load(config.lottery_a);
  Lottery b = Lottery::load(config.lottery_b);
  return {ProspectPair::make(std::move(a), std::move(b),
                             parse_utility_spec(config.utility_spec),
                             parse_phi_spec(config.phi_spec))};
}

int run_compare(const RunConfig& config, std::ostream& out) {
  LoadedPair loaded = load_pair(config);
  PreferenceOutcome outcome = rps1_sides(loaded.pair);
  out << to_string(outcome.relation) << " lhs=" << fixed6(outcome.lhs)
      << " rhs=" << fixed6(outcome.rhs) << "\n";
  if (!config.out_path.empty()) {
    std::ofstream os = open_output(config.out_path);
    if (config.format == "json") {
      MarkovModel chain = markov_model(loaded.pair);
      Json payload = outcome_to_json(outcome);
      payload["stationary_p"] = chain.stationary_p;
      payload["ergodic"] = chain.ergodic;
      os << with_config_echo(config_echo(config, "compare"), payload).dump(2)
         << "\n";
    } else {
      os << "lhs,rhs,relation\n"
         << format_double(outcome.lhs) << ',' << format_double(outcome.rhs)
         << ',' << to_string(outcome.relation) << "\n";
    }
  }
  return 0;
}

int run_simulate(const RunConfig& config, std::ostream& out) {
  LoadedPair loaded = load_pair(config);
  SimConfig sim = SimConfig::make(loaded.pair, config.k, config.steps,
                                  config.seed);
  if (config.burn_in) sim.burn_in = *config.burn_in;

  SimReport report;
  if (config.out_path.empty()) {
    report = run(sim);
  } else {
    std::ofstream os = open_output(config.out_path);
    if (config.format == "json") {
      os << "{\n  \"config\": "
         << config_echo(config, "simulate").dump(2) << ",\n  \"trajectory\": [";
      bool first = true;
      report = run(sim, [&](const EpochRecord& rec) {
        os << (first ? "\n" : ",\n") << "    {\"epoch\": " << rec.epoch
           << ", \"chosen\": \"" << (rec.chose_a ? 'a' : 'b')
           << "\", \"payoff\": " << format_double(rec.payoff)
           << ", \"S_a\": " << format_double(rec.s_a)
           << ", \"S_b\": " << format_double(rec.s_b)
           << ", \"lambda_a\": " << format_double(rec.lambda_a) << "}";
        first = false;
      });
      os << "\n  ],\n  \"freq_a\": " << format_double(report.freq_a)
         << ",\n  \"freq_b\": " << format_double(report.freq_b) << "\n}\n";
    } else {
      write_trajectory_header(os);
      report = run(sim, [&](const EpochRecord& rec) {
        write_trajectory_row(os, rec);
      });
    }
  }
  out << "freq_a=" << fixed6(report.freq_a)
      << " freq_b=" << fixed6(report.freq_b) << " counted=" << report.counted
      << " steps=" << report.steps << "\n";
  return 0;
}

int run_ce(const RunConfig& config, std::ostream& out) {
  if (config.lottery.empty()) {
    fail(ErrorCode::missing_input, "--lottery file is required");
  }
  Lottery lottery = Lottery::load(config.lottery);
  UtilityFn utility = parse_utility_spec(config.utility_spec);
  StimulusModel phi = parse_phi_spec(config.phi_spec);
  SolverSettings settings;
  if (config.bracket_low && config.bracket_high) {
    settings.bracket_low = *config.bracket_low;
    settings.bracket_high = *config.bracket_high;
  }
  double ce = certainty_equivalent(lottery, utility, phi, settings);
  out << "ce=" << general12(ce) << "\n";
  if (!config.out_path.empty()) {
    std::ofstream os = open_output(config.out_path);
    if (config.format == "json") {
      os << with_config_echo(config_echo(config, "ce"), Json{{"ce", ce}})
                .dump(2)
         << "\n";
    } else {
      os << "ce\n" << format_double(ce) << "\n";
    }
  }
  return 0;
}

int run_curve(const RunConfig& config, std::ostream& out) {
  UtilityFn utility = parse_utility_spec(config.utility_spec);
  StimulusModel phi = parse_phi_spec(config.phi_spec);
  Curve curve = indifference_curve(config.family, utility, phi,
                                   uniform_grid(config.grid));
  std::size_t failed = 0;
  for (const CurvePoint& p : curve) {
    if (!p.ok) ++failed;
  }

  std::string path = config.out_path;
  if (path.empty()) {
    path = "curve_" +
           std::string(config.family == TwoPointFamily::gains ? "gains"
                                                              : "losses") +
           "_" + sanitize_for_filename(config.utility_spec) + "_" +
           sanitize_for_filename(config.phi_spec) + "." + config.format;
  }
  std::ofstream os = open_output(path);
  if (config.format == "json") {
    os << with_config_echo(config_echo(config, "curve"), curve_to_json(curve))
              .dump(2)
       << "\n";
  } else {
    write_curve_csv(os, curve);
  }
  out << "points=" << (curve.size() - failed) << " failed=" << failed
      << " out=" << path << "\n";
  return 0;
}

int run_allais(const RunConfig& config, std::ostream& out) {
  UtilityFn utility = parse_utility_spec(config.utility_spec);
  StimulusModel phi = parse_phi_spec(config.phi_spec);
  AllaisResult result = allais_region(utility, phi, config.weight, config.grid);

  std::string stem = config.out_path;
  if (stem.empty()) {
    stem = "allais_" + sanitize_for_filename(config.utility_spec) + "_" +
           sanitize_for_filename(config.phi_spec) + "_w" +
           sanitize_for_filename(format_double(config.weight));
  }

  std::optional<IndependenceWitness> witness = independence_violation_witness(
      utility, phi, config.weight, config.grid);

  std::string out_names;
  if (config.format == "json") {
    std::string path = stem + ".json";
    std::ofstream os = open_output(path);
    Json payload = allais_to_json(result);
    payload["witness"] =
        witness ? independence_witness_to_json(*witness) : Json(nullptr);
    os << with_config_echo(config_echo(config, "allais"), payload).dump(2)
       << "\n";
    out_names = path;
  } else {
    std::ofstream b1 = open_output(stem + "_boundary1.csv");
    write_curve_csv(b1, result.boundary_plain);
    std::ofstream b2 = open_output(stem + "_boundary2.csv");
    write_curve_csv(b2, result.boundary_diluted);
    std::ofstream region = open_output(stem + "_region.csv");
    write_region_csv(region, result);
    std::ofstream wit = open_output(stem + "_witness.json");
    wit << (witness ? independence_witness_to_json(*witness)
                    : Json{{"kind", "none"}})
               .dump(2)
        << "\n";
    out_names = stem + "_{boundary1,boundary2,region}.csv";
  }

  double fraction = static_cast<double>(result.region_count) /
                    static_cast<double>(config.grid * config.grid);
  out << "region_fraction=" << fixed6(fraction)
      << " cells=" << result.region_count << "/" << config.grid * config.grid
      << " out=" << out_names << "\n";
  return 0;
}

int run_witness(const RunConfig& config, std::ostream& out) {
  std::string path = config.out_path;
  if (config.witness_kind == "independence") {
    UtilityFn utility = parse_utility_spec(config.utility_spec);
    StimulusModel phi = parse_phi_spec(config.phi_spec);
    std::optional<IndependenceWitness> witness =
        independence_violation_witness(utility, phi, config.weight,
                                       config.grid);
    if (path.empty()) path = "witness_independence.json";
    std::ofstream os = open_output(path);
    os << with_config_echo(config_echo(config, "witness"),
                           witness ? independence_witness_to_json(*witness)
                                   : Json{{"kind", "none"}})
              .dump(2)
       << "\n";
    if (witness) {
      out << "witness=independence c=" << general12(witness->c)
          << " x=" << general12(witness->x) << " out=" << path << "\n";
    } else {
      out << "witness=none out=" << path << "\n";
    }
    return 0;
  }
  if (config.witness_kind != "intransitivity") {
    fail(ErrorCode::bad_spec_string,
         "unknown witness kind '" + config.witness_kind + "'");
  }
  std::optional<IntransitivityWitness> witness =
      intransitivity_witness(config.budget, config.seed);
  if (path.empty()) path = "witness_intransitivity.json";
  std::ofstream os = open_output(path);
  os << with_config_echo(config_echo(config, "witness"),
                         witness ? intransitivity_witness_to_json(*witness)
                                 : Json{{"kind", "none"}})
            .dump(2)
     << "\n";
  if (!witness) {
    out << "witness=none out=" << path << "\n";
  } else if (std::holds_alternative<CycleWitness>(*witness)) {
    out << "witness=cycle out=" << path << "\n";
  } else {
    out << "witness=common_ce c="
        << general12(std::get<CommonCeWitness>(*witness).c) << " out=" << path
        << "\n";
  }
  return 0;
}

int run_kconv(const RunConfig& config, std::ostream& out) {
  LoadedPair loaded = load_pair(config);
  if (config.k_values.empty()) {
    fail(ErrorCode::missing_input, "--k requires at least one window size");
  }
  KConvergenceParams params;
  params.steps_per_replication = config.steps;
  params.replications = config.replications;
  params.seed = config.seed;
  params.alpha = config.alpha;
  std::vector<KConvergenceRow> rows =
      k_convergence_experiment(loaded.pair, config.k_values, params);

  std::string path = config.out_path;
  if (path.empty()) {
    path = "kconv_" + sanitize_for_filename(config.utility_spec) + "_" +
           sanitize_for_filename(config.phi_spec) + "." + config.format;
  }
  std::ofstream os = open_output(path);
  if (config.format == "json") {
    os << with_config_echo(config_echo(config, "kconv"), kconv_to_json(rows))
              .dump(2)
       << "\n";
  } else {
    write_kconv_csv(os, rows);
  }

  std::string summary;
  for (const KConvergenceRow& row : rows) {
    if (!summary.empty()) summary += ' ';
    summary += "k=" + std::to_string(row.k) + ":" + to_string(row.relation);
    if (row.inconclusive) summary += "(inconclusive)";
  }
  out << summary << " out=" << path << "\n";
  return 0;
}

}  // namespace

UtilityFn parse_utility_spec(std::string_view spec) {
  std::vector<std::string_view> tokens = split(spec, ':');
  if (tokens.empty() || tokens[0].empty()) {
    fail(ErrorCode::bad_spec_string, "empty utility spec");
  }
  if (tokens[0] == "linear") {
    if (tokens.size() != 1) {
      fail(ErrorCode::bad_spec_string,
           "linear utility takes no parameters: '" + std::string(spec) + "'");
    }
    return UtilityFn::linear();
  }
  if (tokens[0] == "power") {
    if (tokens.size() != 2) {
      fail(ErrorCode::bad_spec_string,
           "expected power:<alpha>, got '" + std::string(spec) + "'");
    }
    return UtilityFn::power(parse_spec_number(tokens[1], spec));
  }
  if (tokens[0] == "log") {
    if (tokens.size() != 2) {
      fail(ErrorCode::bad_spec_string,
           "expected log:<rate>, got '" + std::string(spec) + "'");
    }
    return UtilityFn::scaled_log(parse_spec_number(tokens[1], spec));
  }
  if (tokens[0] == "shift") {
    if (tokens.size() < 3) {
      fail(ErrorCode::bad_spec_string,
           "expected shift:<base>:<offset>, got '" + std::string(spec) + "'");
    }
    std::string base;
    for (std::size_t i = 1; i + 1 < tokens.size(); ++i) {
      if (i > 1) base += ':';
      base += std::string(tokens[i]);
    }
    return UtilityFn::shifted(parse_utility_spec(base),
                              parse_spec_number(tokens.back(), spec));
  }
  fail(ErrorCode::bad_spec_string,
       "unknown utility family '" + std::string(tokens[0]) + "'");
}

StimulusModel parse_phi_spec(std::string_view spec) {
  std::vector<std::string_view> tokens = split(spec, ':');
  if (tokens[0] == "identity") {
    if (tokens.size() != 1) {
      fail(ErrorCode::bad_spec_string,
           "identity Phi takes no parameters: '" + std::string(spec) + "'");
    }
    return StimulusModel::identity();
  }
  if (tokens[0] == "exp") {
    if (tokens.size() != 2) {
      fail(ErrorCode::bad_spec_string,
           "expected exp:<scale>, got '" + std::string(spec) + "'");
    }
    return StimulusModel::exponential(parse_spec_number(tokens[1], spec));
  }
  fail(ErrorCode::bad_spec_string,
       "unknown Phi '" + std::string(tokens[0]) + "'");
}

RunConfig parse_args(const std::vector<std::string>& args) {
  static const std::vector<std::string> kCommands = {
      "compare", "simulate", "ce", "curve", "allais", "witness", "kconv"};
  if (args.empty()) {
    fail(ErrorCode::unknown_command,
         "expected one of: compare simulate ce curve allais witness kconv");
  }
  if (args[0] != "--help" && args[0] != "-h" &&
      std::find(kCommands.begin(), kCommands.end(), args[0]) ==
          kCommands.end()) {
    fail(ErrorCode::unknown_command, "'" + args[0] + "'");
  }

  RunConfig config;
  std::string family = "gains";

  CLI::App app{"RPS adaptive-preference toolkit"};
  app.require_subcommand(0, 1);

  auto add_utility_phi = [&](CLI::App* cmd) {
    cmd->add_option("--utility", config.utility_spec,
                    "linear | power:<a> | log:<r> | shift:<base>:<off>");
    cmd->add_option("--phi", config.phi_spec, "identity | exp:<d>");
  };
  auto add_pair = [&](CLI::App* cmd) {
    cmd->add_option("--a", config.lottery_a, "lottery file for prospect A")
        ->required();
    cmd->add_option("--b", config.lottery_b, "lottery file for prospect B")
        ->required();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--out", config.out_path, "output path");
    cmd->add_option("--format", config.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* compare = app.add_subcommand("compare", "evaluate the preference");
  add_pair(compare);
  add_utility_phi(compare);
  add_output(compare);

  CLI::App* simulate =
      app.add_subcommand("simulate", "run the iterated choice process");
  add_pair(simulate);
  add_utility_phi(simulate);
  simulate->add_option("--k", config.k, "payoff window (0 = unbounded)");
  simulate->add_option("--steps", config.steps, "epochs");
  std::uint64_t burn_in_value = 0;
  CLI::Option* burn_opt =
      simulate->add_option("--burn-in", burn_in_value, "epochs discarded");
  simulate->add_option("--seed", config.seed, "rng seed")->required();
  add_output(simulate);

  CLI::App* ce = app.add_subcommand("ce", "certainty equivalent");
  ce->add_option("--lottery", config.lottery, "lottery file")->required();
  add_utility_phi(ce);
  double bracket_low = 0.0, bracket_high = 0.0;
  CLI::Option* lo_opt = ce->add_option("--bracket-low", bracket_low);
  CLI::Option* hi_opt = ce->add_option("--bracket-high", bracket_high);
  add_output(ce);

  CLI::App* curve = app.add_subcommand("curve", "certainty equivalent curve");
  curve->add_option("--family", family, "gains | losses")
      ->check(CLI::IsMember({"gains", "losses"}));
  add_utility_phi(curve);
  curve->add_option("--grid", config.grid, "grid points per axis");
  add_output(curve);

  CLI::App* allais = app.add_subcommand("allais", "dilution reversal region");
  add_utility_phi(allais);
  allais->add_option("--weight", config.weight, "dilution weight on the lottery");
  allais->add_option("--grid", config.grid, "grid points per axis");
  add_output(allais);

  CLI::App* witness = app.add_subcommand("witness", "search for a witness");
  witness->add_option("--kind", config.witness_kind,
                      "intransitivity | independence")
      ->check(CLI::IsMember({"intransitivity", "independence"}));
  witness->add_option("--budget", config.budget, "search probes");
  witness->add_option("--seed", config.seed, "rng seed")->required();
  add_utility_phi(witness);
  witness->add_option("--weight", config.weight, "dilution weight");
  witness->add_option("--grid", config.grid, "grid points per axis");
  add_output(witness);

  CLI::App* kconv = app.add_subcommand("kconv", "window-size sweep");
  add_pair(kconv);
  add_utility_phi(kconv);
  kconv->add_option("--k", config.k_values, "comma-separated window sizes")
      ->delimiter(',')
      ->required();
  kconv->add_option("--steps", config.steps, "epochs per replication");
  kconv->add_option("--replications", config.replications);
  kconv->add_option("--alpha", config.alpha, "sign-test level");
  kconv->add_option("--seed", config.seed, "rng seed")->required();
  add_output(kconv);

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("rps");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::RequiredError& e) {
    fail(ErrorCode::missing_input, e.what());
  } catch (const CLI::ParseError& e) {
    fail(ErrorCode::bad_spec_string, e.what());
  }

  if (app.get_subcommands().empty()) {
    throw HelpRequested{app.help()};
  }
  CLI::App* chosen = app.get_subcommands().front();
  const std::string& name = chosen->get_name();
  if (name == "compare") config.command = Command::compare;
  else if (name == "simulate") config.command = Command::simulate;
  else if (name == "ce") config.command = Command::ce;
  else if (name == "curve") config.command = Command::curve;
  else if (name == "allais") config.command = Command::allais;
  else if (name == "witness") config.command = Command::witness;
  else if (name == "kconv") config.command = Command::kconv;

  if (burn_opt->count() > 0) config.burn_in = burn_in_value;
  if (lo_opt->count() > 0) config.bracket_low = bracket_low;
  if (hi_opt->count() > 0) config.bracket_high = bracket_high;
  if (lo_opt->count() != hi_opt->count()) {
    fail(ErrorCode::bad_spec_string,
         "--bracket-low and --bracket-high must be given together");
  }
  config.family =
      family == "gains" ? TwoPointFamily::gains : TwoPointFamily::losses;

  // validate the spec strings eagerly so usage errors surface at parse time
  parse_utility_spec(config.utility_spec);
  parse_phi_spec(config.phi_spec);
  return config;
}

int execute(const RunConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::compare: return run_compare(config, out);
    case Command::simulate: return run_simulate(config, out);
    case Command::ce: return run_ce(config, out);
    case Command::curve: return run_curve(config, out);
    case Command::allais: return run_allais(config, out);
    case Command::witness: return run_witness(config, out);
    case Command::kconv: return run_kconv(config, out);
  }
  fail(ErrorCode::unknown_command, "unhandled command");
}

}  // namespace rps::cli

#include "repadvice/cli/app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "repadvice/core_model.hpp"
#include "repadvice/errors.hpp"
#include "repadvice/extensions.hpp"
#include "repadvice/known_type.hpp"
#include "repadvice/parallel.hpp"
#include "repadvice/sim_oracle.hpp"
#include "repadvice/wage_model.hpp"

namespace repadvice::cli {

namespace {

const Settings kCommon = {{"format", "csv"}, {"out", ""}, {"workers", "1"}};

Settings with_common(Settings s) {
  s.insert(kCommon.begin(), kCommon.end());
  return s;
}

const std::string kPriorAxis = "0.002:0.998:499";

std::vector<CommandSpec> build_commands() {
  const Settings point = {{"sigma", "0.2"},      {"prior", "0.25"},      {"wage", "2"},
                          {"threshold", "prior"}, {"epsilon", "0"},       {"base-rate", "0.5"},
                          {"prevalence", "0.5"},  {"psi", "sqrt"}};
  Settings sim = point;
  sim.insert({{"policy", "complex"},
              {"seed", std::to_string(sim::kDefaultSeed)},
              {"draws", "1000000"}});
  return {
      {"figure1", "Complex-rule gain over a wage grid for psi = w R",
       with_common({{"sigma", "0.1,0.2"},
                    {"prior", "0.25,0.5,0.75"},
                    {"wage", "0:10:501"},
                    {"psi", "sqrt"},
                    {"threshold", "prior"}})},
      {"figure2", "Complex-rule posteriors over a prior grid",
       with_common({{"sigma", "0.1,0.2"}, {"prior", kPriorAxis}})},
      {"figure3", "Payoffs of both rules under the replacement wage",
       with_common({{"sigma", "0.1,0.2"}, {"wage", "0.5,1"}, {"threshold", "0.5"},
                    {"prior", kPriorAxis}})},
      {"figure4", "Best-response sets in the known-type wage game",
       with_common({{"sigma", "0.1,0.2"}, {"wage", "0.5,1,5"}, {"p-other", "0:1:501"}})},
      {"choose", "Rule choice with payoff breakdown", with_common(point)},
      {"simulate", "Monte-Carlo estimates against closed forms", with_common(sim)},
      {"equilibria", "Equilibrium classification of the known-type wage game",
       with_common({{"sigma", "0.1,0.2"}, {"wage", "0.5,1,5"}})},
  };
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string interval_text(const known::Interval& iv) {
  return std::string(iv.lo_closed ? "[" : "(") + format_number(iv.lo) + "," +
         format_number(iv.hi) + (iv.hi_closed ? "]" : ")");
}

// Reads a setting that must hold exactly one value.
double single(const Settings& s, const std::string& key) {
  const auto grid = parse_grid(key, s.at(key));
  if (grid.size() != 1) throw UsageError("--" + key + ": expected a single value");
  return grid.front();
}

// Threshold grid; "prior" pins the threshold to each row's prior (encoded as NaN).
std::vector<double> threshold_grid(const Settings& s) {
  if (s.at("threshold") == "prior") return {std::nan("")};
  return parse_grid("threshold", s.at("threshold"));
}

double resolve_threshold(double threshold, double prior) {
  return std::isnan(threshold) ? prior : threshold;
}

unsigned workers_of(const Settings& s) {
  const auto w = parse_count("workers", s.at("workers"));
  if (w < 1 || w > 1024) throw UsageError("--workers: must lie in [1, 1024]");
  return static_cast<unsigned>(w);
}

// Evaluates rows in parallel; row order is the index order.
std::vector<std::vector<Cell>> rows_by_index(std::size_t count, unsigned workers,
                                             const std::function<std::vector<Cell>(std::size_t)>& row) {
  std::vector<std::vector<Cell>> rows(count);
  parallel_for(count, workers, [&](std::size_t i) { rows[i] = row(i); });
  return rows;
}

Table figure1(const Settings& s) {
  const auto sigmas = parse_grid("sigma", s.at("sigma"));
  const auto priors = parse_grid("prior", s.at("prior"));
  const auto wages = parse_grid("wage", s.at("wage"));
  const auto thresholds = threshold_grid(s);
  if (thresholds.size() != 1) throw UsageError("--threshold: expected a single value");
  Table t{{"sigma", "pi0", "w", "delta_phi"}, {}};
  const std::size_t nw = wages.size(), np = priors.size();
  t.rows = rows_by_index(sigmas.size() * np * nw, workers_of(s), [&](std::size_t i) {
    const double sigma = sigmas[i / (np * nw)], prior = priors[(i / nw) % np], w = wages[i % nw];
    const ModelParams params(sigma, prior);
    const auto psi = make_psi(s.at("psi"), w, resolve_threshold(thresholds[0], prior));
    return std::vector<Cell>{sigma, prior, w, core::delta_phi(params, psi)};
  });
  return t;
}

Table figure2(const Settings& s) {
  const auto sigmas = parse_grid("sigma", s.at("sigma"));
  const auto priors = parse_grid("prior", s.at("prior"));
  Table t{{"sigma", "pi0", "posterior_success", "posterior_failure"}, {}};
  const std::size_t np = priors.size();
  t.rows = rows_by_index(sigmas.size() * np, workers_of(s), [&](std::size_t i) {
    const double sigma = sigmas[i / np], prior = priors[i % np];
    const auto post = core::posterior(ModelParams(sigma, prior));
    return std::vector<Cell>{sigma, prior, post.on_success, post.on_failure};
  });
  return t;
}

Table figure3(const Settings& s) {
  const auto sigmas = parse_grid("sigma", s.at("sigma"));
  const auto wages = parse_grid("wage", s.at("wage"));
  const double threshold = single(s, "threshold");
  const auto priors = parse_grid("prior", s.at("prior"));
  Table t{{"sigma", "w", "pi0", "phi_complex", "phi_simple", "regime_case"}, {}};
  const std::size_t nw = wages.size(), np = priors.size();
  t.rows = rows_by_index(sigmas.size() * nw * np, workers_of(s), [&](std::size_t i) {
    const double sigma = sigmas[i / (nw * np)], w = wages[(i / np) % nw], prior = priors[i % np];
    const wage::StepReputation rep(w, threshold);
    const ModelParams params(sigma, prior);
    const auto regime = wage::classify_regime(sigma, rep);
    return std::vector<Cell>{sigma,
                             w,
                             prior,
                             wage::expected_payoff_wage(Rule::kComplex, params, rep).total,
                             wage::expected_payoff_wage(Rule::kSimple, params, rep).total,
                             std::string(wage::to_string(regime.case_label))};
  });
  return t;
}

void check_known_inputs(double sigma, double w) {
  if (!(sigma > 0.0 && sigma <= 0.25)) throw DomainError("--sigma: must lie in (0, 0.25]");
  if (!(w >= 0.0)) throw DomainError("--wage: must be non-negative");
}

Table figure4(const Settings& s) {
  const auto sigmas = parse_grid("sigma", s.at("sigma"));
  const auto wages = parse_grid("wage", s.at("wage"));
  const auto others = parse_grid("p-other", s.at("p-other"));
  for (double p : others) {
    if (p < 0.0 || p > 1.0) throw UsageError("--p-other: probabilities must lie in [0, 1]");
  }
  Table t{{"sigma", "w", "p_other", "br_incompetent", "br_competent", "classification"}, {}};
  const std::size_t nw = wages.size(), no = others.size();
  t.rows = rows_by_index(sigmas.size() * nw * no, workers_of(s), [&](std::size_t i) {
    const double sigma = sigmas[i / (nw * no)], w = wages[(i / no) % nw], p = others[i % no];
    check_known_inputs(sigma, w);
    return std::vector<Cell>{
        sigma,
        w,
        p,
        known::best_response_incompetent(sigma, w, p).to_string(),
        known::best_response_competent(sigma, w, p).to_string(),
        std::string(known::to_string(known::classify_equilibria(sigma, w).classification))};
  });
  return t;
}

struct Point {
  ModelParams params;
  ReputationFunction psi;
  double wage;
  double threshold;
  double epsilon;
};

// Cartesian product of the point grids, in key order sigma, prior, wage,
// threshold, epsilon, base-rate, prevalence.
std::vector<Point> point_grid(const Settings& s) {
  const auto sigmas = parse_grid("sigma", s.at("sigma"));
  const auto priors = parse_grid("prior", s.at("prior"));
  const auto wages = parse_grid("wage", s.at("wage"));
  const auto thresholds = threshold_grid(s);
  const auto epsilons = parse_grid("epsilon", s.at("epsilon"));
  const auto base_rates = parse_grid("base-rate", s.at("base-rate"));
  const auto prevalences = parse_grid("prevalence", s.at("prevalence"));
  std::vector<Point> points;
  for (double sigma : sigmas)
    for (double prior : priors)
      for (double w : wages)
        for (double th : thresholds)
          for (double eps : epsilons)
            for (double a : base_rates)
              for (double x : prevalences) {
                const double threshold = resolve_threshold(th, prior);
                points.push_back({ModelParams(sigma, prior, x, a),
                                  make_psi(s.at("psi"), w, threshold), w, threshold, eps});
              }
  return points;
}

Table choose(const Settings& s) {
  Table t{{"sigma", "pi0", "w", "threshold", "epsilon", "base_rate", "prevalence", "rule",
           "delta_phi", "accuracy_complex", "reputation_complex", "total_complex",
           "accuracy_simple", "reputation_simple", "total_simple"},
          {}};
  for (const auto& pt : point_grid(s)) {
    const auto& p = pt.params;
    core::PosteriorPair post;
    double delta = 0.0;
    Rule rule = Rule::kComplex;
    if (pt.epsilon != 0.0) {
      const ext::NoisyObservation noise(pt.epsilon);
      delta = ext::delta_phi_noisy(p, pt.psi, noise);
      rule = ext::choose_rule_noisy(p, pt.psi, noise);
      post = ext::noisy_posterior(p, noise);
    } else if (!p.has_even_base_rate()) {
      delta = ext::delta_phi_general(p, pt.psi);
      rule = ext::rule_choice_general(p, pt.psi);
      post = ext::posterior_general(p);
    } else {
      delta = core::delta_phi(p, pt.psi);
      rule = core::choose_rule(p, pt.psi);
      post = core::posterior(p);
    }
    const auto complex = PayoffBreakdown::of(
        post.p_success, post.p_success * pt.psi(post.on_success) +
                            (1.0 - post.p_success) * pt.psi(post.on_failure));
    const auto simple = PayoffBreakdown::of(p.base_rate(), pt.psi(p.prior()));
    t.rows.push_back({p.sigma(), p.prior(), pt.wage, pt.threshold, pt.epsilon, p.base_rate(),
                      p.prevalence(), std::string(to_string(rule)), delta, complex.accuracy,
                      complex.reputation, complex.total, simple.accuracy, simple.reputation,
                      simple.total});
  }
  return t;
}

Table simulate(const Settings& s) {
  for (const char* key : {"sigma", "prior", "wage", "epsilon", "base-rate", "prevalence"}) {
    single(s, key);
  }
  if (s.at("threshold") != "prior") single(s, "threshold");
  const Point pt = point_grid(s).front();
  sim::SimConfig config;
  config.seed = parse_count("seed", s.at("seed"));
  config.n_draws = parse_count("draws", s.at("draws"));
  config.workers = workers_of(s);
  if (config.n_draws < 1) throw UsageError("--draws: must be at least 1");
  const auto policy = parse_policy(s.at("policy"));
  std::optional<ext::NoisyObservation> noise;
  if (pt.epsilon != 0.0) noise.emplace(pt.epsilon);
  const auto report = sim::simulate_game(pt.params, pt.psi, policy, noise, config);
  const auto expected = sim::expected_statistics(pt.params, pt.psi, policy, noise);

  Table t{{"statistic", "estimate", "std_error", "n", "analytic", "z_score", "within_4se"}, {}};
  for (const auto& [key, est] : report) {
    std::vector<Cell> row{key, est.mean, est.std_error, static_cast<double>(est.n)};
    const auto it = expected.find(key);
    if (it == expected.end()) {
      row.insert(row.end(), {std::string(), std::string(), std::string()});
    } else {
      const double diff = est.mean - it->second;
      row.emplace_back(it->second);
      if (est.std_error > 0.0) {
        row.emplace_back(diff / est.std_error);
      } else {
        row.emplace_back(std::string());
      }
      row.emplace_back(bool_text(std::abs(diff) <= 4.0 * est.std_error + 1e-12));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table equilibria(const Settings& s, std::ostream& warnings) {
  const auto sigmas = parse_grid("sigma", s.at("sigma"));
  const auto wages = parse_grid("wage", s.at("wage"));
  Table t{{"sigma", "w", "knife_edge_wage", "classification", "equilibria", "near_knife_edge"}, {}};
  for (double sigma : sigmas) {
    for (double w : wages) {
      check_known_inputs(sigma, w);
      const auto report = known::classify_equilibria(sigma, w);
      std::string eq;
      switch (report.classification) {
        case known::EquilibriumClass::kNoEquilibrium:
          eq = "none";
          break;
        case known::EquilibriumClass::kUniquePoolingOnComplex:
          eq = "(1,1)";
          break;
        case known::EquilibriumClass::kKnifeEdgeContinuum:
          eq = "p0=p1 in " + interval_text(*report.continuum);
          break;
      }
      if (report.near_knife_edge) {
        warnings << "warning: sigma=" << format_number(sigma) << " w=" << format_number(w)
                 << " is within " << format_number(known::kKnifeEdgeWarnBand)
                 << " (relative) of the knife-edge wage " << format_number(report.knife_edge_wage)
                 << "; the classification is tolerance-sensitive\n";
      }
      t.rows.push_back({sigma, w, report.knife_edge_wage,
                        std::string(known::to_string(report.classification)), eq,
                        bool_text(report.near_knife_edge)});
    }
  }
  return t;
}

}  // namespace

const std::vector<CommandSpec>& commands() {
  static const std::vector<CommandSpec> all = build_commands();
  return all;
}

const CommandSpec& find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return c;
  }
  throw UsageError("unknown command '" + name + "'");
}

Settings resolve_settings(const CommandSpec& command, const Settings& from_config,
                          const Settings& from_flags) {
  Settings out = command.defaults;
  for (const auto& layer : {from_config, from_flags}) {
    for (const auto& [key, value] : layer) {
      if (out.count(key)) out[key] = value;
    }
  }
  for (const auto& [key, value] : from_flags) {
    if (!command.defaults.count(key)) {
      throw UsageError("--" + key + ": not used by " + command.name);
    }
  }
  if (out.at("format") != "csv" && out.at("format") != "json") {
    throw UsageError("--format: expected csv or json, got '" + out.at("format") + "'");
  }
  return out;
}

Table run_command(const std::string& command, const Settings& resolved, std::ostream& warnings) {
  if (command == "figure1") return figure1(resolved);
  if (command == "figure2") return figure2(resolved);
  if (command == "figure3") return figure3(resolved);
  if (command == "figure4") return figure4(resolved);
  if (command == "choose") return choose(resolved);
  if (command == "simulate") return simulate(resolved);
  if (command == "equilibria") return equilibria(resolved, warnings);
  throw UsageError("unknown command '" + command + "'");
}

nlohmann::ordered_json make_meta(const std::string& command, const Settings& resolved) {
  nlohmann::ordered_json meta;
  meta["tool"] = kToolName;
  meta["version"] = kVersion;
  meta["command"] = command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : resolved) {
    if (key == "workers" || key == "out" || key == "format") continue;
    config[key] = value;
  }
  meta["config"] = std::move(config);
  return meta;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expert-advice reputation game: figure data, rule choice, simulation and equilibria",
               std::string(kToolName)};
  app.require_subcommand(1);
  std::string config_path;
  std::map<std::string, std::map<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;
  for (const auto& spec : commands()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.description);
    sub->add_option("--config", config_path, "Flat key = value settings file");
    for (const auto& [key, def] : spec.defaults) {
      const std::string help = def.empty() ? std::string("(stdout)") : "default: " + def;
      options[spec.name][key] = sub->add_option("--" + key, values[key], help);
    }
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    Settings flags;
    for (const auto& [key, opt] : options.at(command)) {
      if (opt->count() > 0) flags[key] = values[key];
    }
    const Settings config = config_path.empty() ? Settings{} : load_config_file(config_path);
    const Settings resolved = resolve_settings(find_command(command), config, flags);
    const Table table = run_command(command, resolved, err);

    std::ofstream file;
    std::ostream* sink = &out;
    if (!resolved.at("out").empty()) {
      file.open(resolved.at("out"), std::ios::binary);
      if (!file) throw UsageError("--out: cannot write '" + resolved.at("out") + "'");
      sink = &file;
    }
    if (resolved.at("format") == "json") {
      write_json(table, make_meta(command, resolved), *sink);
    } else {
      write_csv(table, *sink);
    }
    sink->flush();
    if (!*sink) throw std::runtime_error("failed writing output");
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InfeasibleError& e) {
    err << "infeasible parameters: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace repadvice::cli

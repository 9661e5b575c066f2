#include "cbal/experiment.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "cbal/adversary.hpp"
#include "cbal/baseline.hpp"
#include "cbal/config_lp.hpp"
#include "cbal/expmax.hpp"
#include "cbal/generators.hpp"
#include "cbal/instance_io.hpp"
#include "cbal/offline.hpp"
#include "cbal/online.hpp"
#include "cbal/oracle.hpp"
#include "cbal/path_lp.hpp"
#include "cbal/reductions.hpp"
#include "cbal/simplex.hpp"
#include "cbal/simulate.hpp"
#include "cbal/smoothing.hpp"

namespace cbal {

using ojson = nlohmann::ordered_json;

const std::vector<std::string>& offline_algorithms() {
  static const std::vector<std::string> ids = {"config", "routing", "related"};
  return ids;
}

const std::vector<std::string>& online_algorithms() {
  static const std::vector<std::string> ids = {"config", "related", "routing", "sqrt-baseline"};
  return ids;
}

namespace {

std::string num(double v) { return ojson(v).dump(); }

void require_known(const std::string& algorithm, const std::vector<std::string>& ids, const std::string& command) {
  if (std::find(ids.begin(), ids.end(), algorithm) != ids.end()) return;
  std::string list;
  for (const auto& id : ids) list += (list.empty() ? "" : ", ") + id;
  throw UsageError("unknown " + command + " algorithm '" + algorithm + "' (expected one of: " + list + ")");
}

Instance load_input(const ExperimentSpec& spec) {
  if (!spec.input) throw UsageError(spec.command + " needs --in");
  return read_instance(*spec.input);
}

ConfigInstance as_config(const Instance& instance) {
  if (const auto* c = std::get_if<ConfigInstance>(&instance)) return *c;
  if (const auto* u = std::get_if<UnrelatedInstance>(&instance)) return unrelated_to_config(*u);
  if (const auto* r = std::get_if<RelatedInstance>(&instance)) return related_to_config(*r);
  throw UsageError("routing instances have no explicit configuration form here");
}

template <class T>
const T& expect(const Instance& instance, const std::string& what) {
  if (const auto* x = std::get_if<T>(&instance)) return *x;
  throw UsageError(what + " needs a different instance kind, got '" + instance_kind(instance) + "'");
}

Rational exact_tau(const ExperimentSpec& spec) {
  if (spec.tau_text) return parse_rational(*spec.tau_text);
  if (spec.tau) return rational_from_double(*spec.tau);
  throw UsageError(spec.command + " needs --tau");
}

TinyKind parse_kind(const std::string& kind) {
  if (kind == "config") return TinyKind::kConfig;
  if (kind == "unrelated") return TinyKind::kUnrelated;
  if (kind == "related") return TinyKind::kRelated;
  if (kind == "mixed") return TinyKind::kMixed;
  throw UsageError("unknown instance kind '" + kind + "'");
}

Instance generate(const ExperimentSpec& spec, std::uint64_t item) {
  CounterRng rng(spec.seed, derive_stream(StreamDomain::kGenerator, item, 0));
  if (spec.kind == "routing") {
    RoutingParams params;
    params.max_vertices = std::max<std::size_t>(spec.m, 2);
    params.max_requests = std::max<std::size_t>(spec.n, 1);
    return random_routing_dag(params, rng);
  }
  if (spec.kind == "adaptivity-gap") {
    Rational tau = spec.tau_text || spec.tau ? exact_tau(spec) : Rational(2);
    return gen_adaptivity_gap_instance(spec.m, tau);
  }
  if (spec.kind == "clairvoyance") return gen_clairvoyance_adversary_instance(spec.m);
  if (spec.kind == "related-random") return random_related_instance(spec.m, spec.n, 2, 4, rng);
  TinyParams params;
  params.kind = parse_kind(spec.kind);
  params.max_requests = std::max<std::size_t>(spec.n, 1);
  params.max_resources = std::max<std::size_t>(spec.m, 1);
  return random_tiny_instance(params, rng);
}

ojson simulation_json(const SimulationReport& s) {
  ojson out;
  out["trials"] = s.trials;
  out["seed"] = s.seed;
  out["mean_makespan"] = s.mean_makespan;
  out["stderr_makespan"] = s.stderr_makespan;
  out["mean_loads"] = s.mean_loads;
  if (s.tau) {
    out["tau"] = *s.tau;
    out["mean_exceptional"] = s.mean_exceptional;
  }
  return out;
}

ojson path_json(const Path& path) { return ojson(path.vertices); }

ojson groups_json(const SmoothedGroups& groups) {
  ojson out = ojson::array();
  for (const auto& g : groups.groups) {
    out.push_back({{"speed", to_string(g.speed)}, {"count", g.count()}, {"original_ids", g.original_ids}});
  }
  return out;
}

ojson value_json(const PolicyValue& v) {
  return {{"makespan", to_string(v.makespan)},
          {"makespan_decimal", to_double(v.makespan)},
          {"exceptional", to_string(v.exceptional)},
          {"exceptional_decimal", to_double(v.exceptional)}};
}

const std::vector<std::string> kRunHeader = {"item", "algorithm", "kind", "seed", "status", "tau_or_lambda",
                                             "mean_makespan", "stderr_makespan"};

struct RunRow {
  ojson report;
  std::vector<std::string> csv;
  bool failed = false;
};

ojson offline_core(const OfflineReport& r) {
  ojson out;
  out["tau"] = r.tau;
  out["lp_status"] = r.lp_status;
  out["opt_lower_bound"] = r.opt_lower_bound;
  out["lp_solves"] = r.lp_solves;
  out["truncated_loads"] = r.truncated_loads;
  out["exceptional_load"] = r.exceptional_load;
  return out;
}

RunRow run_offline(const Instance& instance, const std::string& algorithm, std::uint64_t seed, std::size_t trials) {
  RunRow row;
  CounterRng rng(seed, derive_stream(StreamDomain::kRounding, 0, 0));
  ojson& out = row.report;
  out["algorithm"] = algorithm;
  out["instance_kind"] = instance_kind(instance);
  out["seed"] = seed;
  SimulationReport sim;
  double tau = 0.0;
  try {
    if (algorithm == "config") {
      ConfigInstance config = as_config(instance);
      OfflineReport r = offline_config_balancing(config, rng);
      tau = r.tau;
      out.update(offline_core(r));
      out["assignment"] = r.assignment.configs;
      sim = simulate_policy(config, fixed_assignment_policy(r.assignment.configs), trials, seed, r.tau);
    } else if (algorithm == "routing") {
      const auto& graph = expect<RoutingInstance>(instance, "offline routing");
      OfflineReport r = offline_routing(graph, rng);
      tau = r.tau;
      out.update(offline_core(r));
      ojson paths = ojson::array();
      for (const auto& p : r.assignment.paths) paths.push_back(path_json(p));
      out["paths"] = paths;
      ConfigInstance routed = routed_config_instance(graph, r.assignment.paths);
      sim = simulate_policy(routed, fixed_assignment_policy(std::vector<std::size_t>(graph.requests.size(), 0)),
                            trials, seed, r.tau);
    } else {
      const auto& related = expect<RelatedInstance>(instance, "offline related");
      RelatedOffline r = offline_related(related, rng);
      tau = r.report.tau;
      out.update(offline_core(r.report));
      out["groups"] = groups_json(r.smoothing.groups);
      out["machine_assignment"] = r.report.assignment.configs;
      out["job_groups"] = r.job_group;
      sim = simulate_policy(r.config, r.policy, trials, seed, r.report.tau);
    }
  } catch (const NoFeasibleTau& e) {
    out["verdict"] = "infeasible";
    out["message"] = e.what();
    row.failed = true;
    row.csv = {algorithm, instance_kind(instance), std::to_string(seed), "infeasible", "", "", ""};
    return row;
  }
  out["verdict"] = "ok";
  out["simulation"] = simulation_json(sim);
  row.csv = {algorithm, instance_kind(instance), std::to_string(seed), "ok", num(tau), num(sim.mean_makespan),
             num(sim.stderr_makespan)};
  return row;
}

ojson trace_json(const OnlineRun& run, bool routing) {
  ojson trace = ojson::array();
  for (const auto& rec : run.trace) {
    ojson r;
    r["request"] = rec.request;
    r["phase"] = rec.phase;
    r["lambda"] = rec.lambda;
    if (routing) {
      r["path"] = path_json(rec.step.path);
    } else {
      r["choice"] = rec.step.choice;
    }
    r["proxy"] = rec.step.proxy;
    r["delta_phi"] = rec.step.delta_phi;
    trace.push_back(std::move(r));
  }
  return trace;
}

void online_summary(ojson& out, const OnlineRun& run) {
  out["initial_lambda"] = run.initial_lambda;
  out["final_lambda"] = run.final_lambda;
  out["phases"] = run.phases;
  out["final_potential"] = potential(run.final_state.load, run.final_state.tau);
}

RunRow run_online(const Instance& instance, const std::string& algorithm, std::uint64_t seed, std::size_t trials,
                  std::optional<double> lambda) {
  RunRow row;
  ojson& out = row.report;
  out["algorithm"] = algorithm;
  out["instance_kind"] = instance_kind(instance);
  out["seed"] = seed;
  SimulationReport sim;
  double final_lambda = 0.0;
  if (algorithm == "config") {
    ConfigInstance config = as_config(instance);
    OnlineRun run = lambda ? online_fixed_lambda(config, *lambda) : online_config_balancing(config);
    online_summary(out, run);
    out["trace"] = trace_json(run, false);
    final_lambda = run.final_lambda;
    if (run.choices.size() < config.requests.size()) {
      out["verdict"] = "fail";
      out["failed_request"] = run.choices.size();
      out["certificate"] = "E[OPT] > " + num(*lambda);
      row.failed = true;
      row.csv = {algorithm, instance_kind(instance), std::to_string(seed), "fail", num(*lambda), "", ""};
      return row;
    }
    out["choices"] = run.choices;
    sim = simulate_policy(config, fixed_assignment_policy(run.choices), trials, seed, run.final_state.tau);
  } else if (algorithm == "related") {
    const auto& related = expect<RelatedInstance>(instance, "online related");
    OnlineRelated r = online_related(related);
    online_summary(out, r.run);
    out["groups"] = groups_json(r.smoothing.groups);
    out["job_groups"] = r.job_group;
    out["trace"] = trace_json(r.run, false);
    final_lambda = r.run.final_lambda;
    sim = simulate_policy(r.config, r.policy, trials, seed, r.run.final_state.tau);
  } else if (algorithm == "routing") {
    const auto& graph = expect<RoutingInstance>(instance, "online routing");
    OnlineRun run = online_routing(graph);
    online_summary(out, run);
    out["trace"] = trace_json(run, true);
    final_lambda = run.final_lambda;
    ConfigInstance routed = routed_config_instance(graph, run.paths);
    sim = simulate_policy(routed, fixed_assignment_policy(std::vector<std::size_t>(graph.requests.size(), 0)), trials,
                          seed, run.final_state.tau);
  } else {
    const auto& related = expect<RelatedInstance>(instance, "sqrt-baseline");
    SqrtListScheduler scheduler(related.speeds);
    out["eligible_machines"] = scheduler.eligible();
    sim = simulate_policy(related_to_config(related), sqrt_list_policy(related), trials, seed);
  }
  out["verdict"] = "ok";
  out["simulation"] = simulation_json(sim);
  row.csv = {algorithm, instance_kind(instance), std::to_string(seed), "ok", num(final_lambda), num(sim.mean_makespan),
             num(sim.stderr_makespan)};
  return row;
}

ExperimentOutcome run_batched(const ExperimentSpec& spec, bool offline) {
  ExperimentOutcome outcome;
  outcome.report["command"] = spec.command;
  outcome.report["algorithm"] = spec.algorithm;
  outcome.csv_header = kRunHeader;
  auto run = [&](const Instance& instance, std::uint64_t seed) {
    return offline ? run_offline(instance, spec.algorithm, seed, spec.trials)
                   : run_online(instance, spec.algorithm, seed, spec.trials, spec.lambda);
  };
  if (spec.batch == 0) {
    RunRow row = run(load_input(spec), spec.seed);
    for (auto& [key, value] : row.report.items()) outcome.report[key] = value;
    row.csv.insert(row.csv.begin(), "0");
    outcome.csv_rows.push_back(std::move(row.csv));
    outcome.exit_code = row.failed ? 2 : 0;
    return outcome;
  }
  ExperimentSpec gen = spec;
  if (spec.algorithm == "routing") gen.kind = "routing";
  if (spec.algorithm == "related" || spec.algorithm == "sqrt-baseline") gen.kind = "related";
  outcome.report["batch"] = spec.batch;
  outcome.report["kind"] = gen.kind;
  ojson results = ojson::array();
  bool any_failed = false;
  for (std::size_t k = 0; k < spec.batch; ++k) {
    Instance instance = generate(gen, k);
    RunRow row = run(instance, spec.seed + k);
    row.report["item"] = k;
    results.push_back(std::move(row.report));
    row.csv.insert(row.csv.begin(), std::to_string(k));
    outcome.csv_rows.push_back(std::move(row.csv));
    any_failed = any_failed || row.failed;
  }
  outcome.report["results"] = results;
  outcome.exit_code = any_failed ? 2 : 0;
  return outcome;
}

AdaptivePolicy load_policy(const std::string& path, const Instance& instance, const ConfigInstance& config,
                           std::shared_ptr<AdaptiveOracle>& oracle_holder) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open policy file " + path);
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const ojson::parse_error& e) {
    throw ParseError(std::string("policy file: ") + e.what(), 0, "");
  }
  const std::string type = doc.value("type", "");
  if (type == "assignment") {
    auto configs = doc.at("configs").get<std::vector<std::size_t>>();
    if (configs.size() != config.requests.size()) throw ValidationError("assignment length does not match requests");
    return fixed_assignment_policy(std::move(configs));
  }
  if (type == "adaptivity-gap-hand") return adaptivity_gap_hand_policy(config.requests.size());
  if (type == "optimal") {
    oracle_holder = std::make_shared<AdaptiveOracle>(config);
    return oracle_holder->policy();
  }
  if (type == "restart") {
    oracle_holder = std::make_shared<AdaptiveOracle>(config);
    return restart_policy(oracle_holder, parse_rational(doc.at("tau").get<std::string>()));
  }
  if (type == "sqrt-list") return sqrt_list_policy(expect<RelatedInstance>(instance, "sqrt-list policy"));
  throw UsageError("unknown policy type '" + type +
                   "' (expected assignment, adaptivity-gap-hand, optimal, restart or sqrt-list)");
}

ExperimentOutcome run_gen(const ExperimentSpec& spec) {
  ExperimentOutcome outcome;
  Instance instance = generate(spec, 0);
  outcome.report["command"] = "gen";
  outcome.report["kind"] = spec.kind;
  outcome.report["instance_kind"] = instance_kind(instance);
  outcome.report["seed"] = spec.seed;
  if (spec.output) {
    write_instance(instance, *spec.output);
  } else {
    outcome.report["instance"] = ojson::parse(format_instance(instance));
  }
  outcome.csv_header = {"kind", "seed"};
  outcome.csv_rows.push_back({instance_kind(instance), std::to_string(spec.seed)});
  return outcome;
}

ExperimentOutcome run_smooth(const ExperimentSpec& spec) {
  ExperimentOutcome outcome;
  const Instance instance = load_input(spec);
  const auto& related = expect<RelatedInstance>(instance, "smooth");
  SmoothingResult result = smooth_machines(related);
  outcome.report["command"] = "smooth";
  outcome.report["machines_in"] = related.speeds.size();
  outcome.report["machines_kept"] = result.instance.speeds.size();
  outcome.report["groups"] = groups_json(result.groups);
  std::string problem = check_smoothed(result.groups, related.speeds.size());
  outcome.report["properties_hold"] = problem.empty();
  if (spec.output) write_instance(result.instance, *spec.output);
  outcome.csv_header = {"machines_in", "machines_kept", "groups"};
  outcome.csv_rows.push_back({std::to_string(related.speeds.size()), std::to_string(result.instance.speeds.size()),
                              std::to_string(result.groups.groups.size())});
  return outcome;
}

ExperimentOutcome run_oracle(const ExperimentSpec& spec) {
  ExperimentOutcome outcome;
  const Instance instance = load_input(spec);
  ConfigInstance config = as_config(instance);
  outcome.report["command"] = "oracle";
  outcome.report["what"] = spec.what;
  outcome.csv_header = {"what", "makespan", "exceptional"};
  if (spec.what == "opt") {
    auto oracle = std::make_shared<AdaptiveOracle>(config);
    Rational value = oracle->value();
    outcome.report["expected_opt"] = to_string(value);
    outcome.report["expected_opt_decimal"] = to_double(value);
    std::string exceptional;
    if (spec.tau || spec.tau_text) {
      Rational tau = exact_tau(spec);
      PolicyValue v = evaluate_policy(config, oracle->policy(), tau);
      outcome.report["tau"] = to_string(tau);
      outcome.report["exceptional"] = to_string(v.exceptional);
      exceptional = to_string(v.exceptional);
    }
    outcome.report["states"] = oracle->states();
    if (spec.output) {
      std::ofstream out(*spec.output);
      out << policy_tree_json(config, oracle->policy());
    }
    outcome.csv_rows.push_back({"opt", to_string(value), exceptional});
  } else if (spec.what == "restart") {
    Rational tau = exact_tau(spec);
    RestartResult r = evaluate_restart_policy(config, tau);
    outcome.report["tau"] = to_string(tau);
    outcome.report["value"] = value_json(r.value);
    outcome.report["max_committed_expected_max"] = to_string(r.max_committed_expected_max);
    outcome.report["expected_restarts"] = to_string(r.expected_restarts);
    outcome.csv_rows.push_back({"restart", to_string(r.value.makespan), to_string(r.value.exceptional)});
  } else if (spec.what == "eval") {
    if (!spec.policy_file) throw UsageError("oracle --what eval needs --policy-file");
    Rational tau = exact_tau(spec);
    std::shared_ptr<AdaptiveOracle> holder;
    AdaptivePolicy policy = load_policy(*spec.policy_file, instance, config, holder);
    PolicyValue v = evaluate_policy(config, policy, tau);
    outcome.report["tau"] = to_string(tau);
    outcome.report["value"] = value_json(v);
    outcome.csv_rows.push_back({"eval", to_string(v.makespan), to_string(v.exceptional)});
  } else {
    throw UsageError("unknown oracle query '" + spec.what + "' (expected opt, restart or eval)");
  }
  return outcome;
}

ExperimentOutcome run_lp_check(const ExperimentSpec& spec) {
  ExperimentOutcome outcome;
  const Instance instance = load_input(spec);
  if (!spec.tau && !spec.tau_text) throw UsageError("lp-check needs --tau");
  TruncationThreshold tau(exact_tau(spec));
  outcome.report["command"] = "lp-check";
  outcome.report["tau"] = tau.value();
  outcome.csv_header = {"tau", "feasible", "residual"};
  bool feasible = false;
  double residual = 0.0;
  if (const auto* graph = std::get_if<RoutingInstance>(&instance)) {
    LppResult cg = solve_lpp_column_generation(*graph, tau);
    LppResult full = solve_lpp_enumerated(*graph, tau);
    feasible = cg.feasible;
    residual = cg.violation;
    outcome.report["lp"] = "path";
    outcome.report["column_generation"] = {
        {"feasible", cg.feasible}, {"violation", cg.violation}, {"iterations", cg.iterations}, {"columns", cg.columns}};
    outcome.report["enumerated"] = {{"feasible", full.feasible}, {"violation", full.violation}, {"columns", full.columns}};
    if (feasible) {
      ojson sol = ojson::array();
      for (const auto& choices : cg.solution.requests) {
        ojson r = ojson::array();
        for (const auto& c : choices) r.push_back({{"path", path_json(c.path)}, {"weight", c.weight}});
        sol.push_back(r);
      }
      outcome.report["solution"] = sol;
    }
    if (spec.output) {
      std::ofstream out(*spec.output);
      out << to_lp_format(lpp_enumerated_program(*graph, tau), "path assignment LP");
    }
  } else {
    ConfigInstance config = as_config(instance);
    auto solution = solve_lpc(config, tau, &residual);
    feasible = solution.has_value();
    outcome.report["lp"] = "config";
    if (solution) {
      ojson sol = ojson::array();
      for (const auto& choices : solution->requests) {
        ojson r = ojson::array();
        for (const auto& c : choices) r.push_back({{"config", c.config}, {"weight", c.weight}});
        sol.push_back(r);
      }
      outcome.report["solution"] = sol;
    }
    if (spec.output) {
      std::ofstream out(*spec.output);
      out << to_lp_format(build_lpc(config, tau).lp, "configuration LP");
    }
  }
  outcome.report["feasible"] = feasible;
  outcome.report["residual"] = residual;
  if (!feasible) outcome.report["certificate"] = "E[OPT] > " + num(tau.value() / 2);
  outcome.exit_code = feasible ? 0 : 2;
  outcome.csv_rows.push_back({num(tau.value()), feasible ? "true" : "false", num(residual)});
  return outcome;
}

ExperimentOutcome run_expmax(const ExperimentSpec& spec) {
  ExperimentOutcome outcome;
  ExpMaxRegime regime;
  try {
    regime = parse_regime(spec.regime);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const double tau = spec.tau.value_or(1.0);
  ExpMaxEstimate est = estimate_expected_max(regime_sums(regime, spec.m, tau), spec.trials, spec.seed);
  double bound = regime_bound(regime, spec.m, tau);
  outcome.report["command"] = "expmax";
  outcome.report["regime"] = regime_name(regime);
  outcome.report["m"] = spec.m;
  outcome.report["tau"] = tau;
  outcome.report["trials"] = spec.trials;
  outcome.report["seed"] = spec.seed;
  outcome.report["estimate"] = est.mean;
  outcome.report["stderr"] = est.stderr_;
  outcome.report["bound"] = bound;
  outcome.report["within_bound"] = est.mean <= bound;
  outcome.csv_header = {"regime", "m", "trials", "estimate", "stderr", "bound"};
  outcome.csv_rows.push_back({regime_name(regime), std::to_string(spec.m), std::to_string(spec.trials), num(est.mean),
                              num(est.stderr_), num(bound)});
  return outcome;
}

ExperimentOutcome run_simulate(const ExperimentSpec& spec) {
  ExperimentOutcome outcome;
  const Instance instance = load_input(spec);
  if (!spec.policy_file) throw UsageError("simulate needs --policy-file");
  ConfigInstance config = as_config(instance);
  std::shared_ptr<AdaptiveOracle> holder;
  AdaptivePolicy policy = load_policy(*spec.policy_file, instance, config, holder);
  SimulationReport sim = simulate_policy(config, policy, spec.trials, spec.seed, spec.tau);
  outcome.report["command"] = "simulate";
  outcome.report["simulation"] = simulation_json(sim);
  outcome.csv_header = {"trials", "seed", "mean_makespan", "stderr_makespan", "mean_exceptional"};
  outcome.csv_rows.push_back({std::to_string(sim.trials), std::to_string(sim.seed), num(sim.mean_makespan),
                              num(sim.stderr_makespan), num(sim.mean_exceptional)});
  return outcome;
}

}  // namespace

ExperimentOutcome run_experiment(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw UsageError("--trials must be at least 1");
  if (spec.command == "gen") return run_gen(spec);
  if (spec.command == "smooth") return run_smooth(spec);
  if (spec.command == "offline") {
    require_known(spec.algorithm, offline_algorithms(), "offline");
    return run_batched(spec, true);
  }
  if (spec.command == "online") {
    require_known(spec.algorithm, online_algorithms(), "online");
    return run_batched(spec, false);
  }
  if (spec.command == "oracle") return run_oracle(spec);
  if (spec.command == "lp-check") return run_lp_check(spec);
  if (spec.command == "expmax") return run_expmax(spec);
  if (spec.command == "simulate") return run_simulate(spec);
  throw UsageError("unknown command '" + spec.command + "'");
}

std::string format_csv(const ExperimentOutcome& outcome) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
    out << "\n";
  };
  line(outcome.csv_header);
  for (const auto& row : outcome.csv_rows) line(row);
  return out.str();
}

}  // namespace cbal

// Command-line front end: parses flags into an ExperimentSpec and writes reports.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cbal/experiment.hpp"
#include "cbal/instance.hpp"
#include "cbal/instance_io.hpp"
#include "cbal/rational.hpp"

namespace {

struct Flags {
  std::string in, out, report, csv, tau, policy_file, tree, dump;
  std::optional<double> lambda;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cbal: stochastic configuration balancing experiments"};
  app.require_subcommand(1);
  cbal::ExperimentSpec spec;
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--report", flags.report, "JSON report path (default stdout)");
    sub->add_option("--csv", flags.csv, "CSV summary path");
    sub->add_option("--seed", spec.seed, "RNG seed");
  };
  auto add_in = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--in", flags.in, "instance JSON file");
    if (required) opt->required();
  };

  auto* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--kind", spec.kind,
                  "config, unrelated, related, mixed, routing, adaptivity-gap, clairvoyance, related-random");
  gen->add_option("--m", spec.m, "resources / machines / vertices");
  gen->add_option("--n", spec.n, "requests / jobs");
  gen->add_option("--tau", flags.tau, "threshold for adaptivity-gap");
  gen->add_option("--out", flags.out, "instance output path");
  add_common(gen);

  auto* smooth = app.add_subcommand("smooth", "smooth a related-machines instance");
  add_in(smooth, true);
  smooth->add_option("--out", flags.out, "smoothed instance output path");
  add_common(smooth);

  auto* offline = app.add_subcommand("offline", "offline non-adaptive algorithms");
  auto* online = app.add_subcommand("online", "online algorithms");
  for (auto* sub : {offline, online}) {
    add_in(sub, false);
    sub->add_option("--algo", spec.algorithm, "algorithm id")->required();
    sub->add_option("--trials", spec.trials, "Monte-Carlo trials for the makespan estimate");
    sub->add_option("--batch", spec.batch, "run on this many seeded tiny instances instead of --in");
    sub->add_option("--kind", spec.kind, "instance family for --batch");
    sub->add_option("--m", spec.m, "max resources for --batch");
    sub->add_option("--n", spec.n, "max requests for --batch");
    add_common(sub);
  }
  online->add_option("--lambda", flags.lambda, "fixed guess of E[OPT] (no doubling)");

  auto* oracle = app.add_subcommand("oracle", "exact adaptive optimum and policy evaluation");
  add_in(oracle, true);
  oracle->add_option("--tau", flags.tau, "truncation threshold, exact (\"11/4\") or decimal");
  oracle->add_option("--what", spec.what, "opt, restart or eval")->check(CLI::IsMember({"opt", "restart", "eval"}));
  oracle->add_option("--policy-file", flags.policy_file, "policy JSON for --what eval");
  oracle->add_option("--tree", flags.tree, "write the optimal decision tree (--what opt)");
  add_common(oracle);

  auto* lp = app.add_subcommand("lp-check", "feasibility of the LP relaxation at tau");
  add_in(lp, true);
  lp->add_option("--tau", flags.tau, "threshold")->required();
  lp->add_option("--dump", flags.dump, "write the LP in CPLEX LP format");
  add_common(lp);

  auto* expmax = app.add_subcommand("expmax", "expected maximum of independent sums");
  expmax->add_option("--m", spec.m, "number of sums");
  expmax->add_option("--trials", spec.trials, "Monte-Carlo trials");
  expmax->add_option("--regime", spec.regime, "sqrtlog, logm or geo");
  expmax->add_option("--tau", flags.tau, "summand bound (default 1)");
  add_common(expmax);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo evaluation of a policy");
  add_in(simulate, true);
  simulate->add_option("--policy-file", flags.policy_file, "policy JSON")->required();
  simulate->add_option("--trials", spec.trials, "trials");
  simulate->add_option("--tau", flags.tau, "threshold for the exceptional-load estimate");
  add_common(simulate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    spec.command = app.get_subcommands().front()->get_name();
    if (!flags.in.empty()) spec.input = flags.in;
    if (!flags.policy_file.empty()) spec.policy_file = flags.policy_file;
    if (!flags.tau.empty()) {
      spec.tau_text = flags.tau;
      try {
        spec.tau = cbal::to_double(cbal::parse_rational(flags.tau));
      } catch (const std::invalid_argument&) {
        throw cbal::UsageError("--tau: cannot parse '" + flags.tau + "'");
      }
    }
    spec.lambda = flags.lambda;
    if (!flags.out.empty()) spec.output = flags.out;
    if (!flags.tree.empty()) spec.output = flags.tree;
    if (!flags.dump.empty()) spec.output = flags.dump;
    if ((spec.command == "offline" || spec.command == "online") && spec.batch == 0 && !spec.input) {
      throw cbal::UsageError(spec.command + " needs --in or --batch");
    }

    cbal::ExperimentOutcome outcome = cbal::run_experiment(spec);
    write_text(flags.report, outcome.report.dump(2) + "\n");
    if (!flags.csv.empty()) write_text(flags.csv, cbal::format_csv(outcome));
    return outcome.exit_code;
  } catch (const cbal::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  } catch (const cbal::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "../support/fixtures.hpp"
#include "cbal/adversary.hpp"
#include "cbal/baseline.hpp"
#include "cbal/config_lp.hpp"
#include "cbal/expmax.hpp"
#include "cbal/generators.hpp"
#include "cbal/offline.hpp"
#include "cbal/online.hpp"
#include "cbal/oracle.hpp"
#include "cbal/path_lp.hpp"
#include "cbal/policy.hpp"
#include "cbal/potential.hpp"
#include "cbal/simulate.hpp"
#include "cbal/smoothing.hpp"

using namespace cbal;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

constexpr std::size_t kSuiteSize = 200;

struct SuiteEntry {
  ConfigInstance instance;
  Rational opt;
};

std::vector<SuiteEntry> build_suite() {
  std::vector<SuiteEntry> out;
  for (std::uint64_t s = 0; s < kSuiteSize; ++s) {
    auto inst = fixtures::tiny_instance(s);
    Rational opt = optimal_adaptive_value(inst);
    out.push_back({std::move(inst), opt});
  }
  return out;
}

void criterion1() {
  auto start = Clock::now();
  auto inst = related_to_config(gen_adaptivity_gap_instance(4, Rational(2)));
  Rational opt = optimal_adaptive_value(inst);
  PolicyValue hand = evaluate_policy(inst, adaptivity_gap_hand_policy(4), Rational(2));
  double t = seconds_since(start);
  bool pass = opt == rational(11, 8) && hand.exceptional == 4 && t < 1.0;
  report(1, pass,
         "E[OPT]=" + to_string(opt) + " hand exceptional=" + to_string(hand.exceptional) + " time=" +
             std::to_string(t) + "s");
}

void criterion2(const std::vector<SuiteEntry>& suite, double setup) {
  auto start = Clock::now();
  std::size_t ok = 0;
  for (const auto& e : suite) {
    Rational tau = 2 * e.opt;
    RestartResult r = evaluate_restart_policy(e.instance, tau);
    if (r.value.makespan <= 2 * e.opt && r.value.exceptional <= 2 * e.opt && r.max_committed_expected_max <= tau) ++ok;
  }
  double t = seconds_since(start) + setup;
  report(2, ok == suite.size() && t < 120.0,
         std::to_string(ok) + "/" + std::to_string(suite.size()) + " instances within 2*E[OPT], time=" +
             std::to_string(t) + "s");
}

void criterion3(const std::vector<SuiteEntry>& suite) {
  std::size_t ok = 0;
  double worst = 0;
  for (const auto& e : suite) {
    double residual = 1;
    auto sol = solve_lpc(e.instance, TruncationThreshold(Rational(2 * e.opt)), &residual);
    worst = std::max(worst, residual);
    if (sol && residual <= 1e-9) ++ok;
  }
  std::ostringstream d;
  d << ok << "/" << suite.size() << " feasible at 2*E[OPT], max residual=" << worst;
  report(3, ok == suite.size(), d.str());
}

void criterion4(const std::vector<SuiteEntry>& suite) {
  std::size_t ok = 0;
  double worst_ratio = 0;
  for (const auto& e : suite) {
    double lambda = to_double_up(e.opt);
    OnlineRun run = online_fixed_lambda(e.instance, lambda);
    double phi = potential(run.final_state.load, run.final_state.tau);
    double cap = 2.0 * static_cast<double>(e.instance.m + 1);
    worst_ratio = std::max(worst_ratio, phi / cap);
    if (run.choices.size() == e.instance.requests.size() && phi <= cap + 1e-9) ++ok;
  }
  std::ostringstream d;
  d << ok << "/" << suite.size() << " never failed with phi <= 2(m+1), max phi/(2(m+1))=" << worst_ratio;
  report(4, ok == suite.size(), d.str());
}

void criterion5() {
  const std::size_t graphs = 120;
  std::size_t verdicts = 0, verdict_ok = 0, infeasible = 0, steps = 0, step_ok = 0;
  for (std::uint64_t s = 0; s < graphs; ++s) {
    RoutingInstance g = fixtures::random_dag(s);
    double hi = lpp_upper_bracket(g);
    for (double f : {0.25, 0.5, 0.75, 1.0}) {
      TruncationThreshold tau(std::max(hi * f, 1e-3));
      ++verdicts;
      bool cg = solve_lpp_column_generation(g, tau).feasible;
      if (cg == solve_lpp_enumerated(g, tau).feasible) ++verdict_ok;
      if (!cg) ++infeasible;
    }
    PotentialState state = PotentialState::fresh(g.edges.size(), routing_initial_lambda(g));
    for (std::size_t j = 0; j < g.requests.size(); ++j) {
      PotentialState before = state;
      StepResult r = online_route_step(g, state, j);
      auto admissible = admissible_edges(g, j, TruncationThreshold(before.tau).exact());
      auto paths = fixtures::all_paths(g, g.requests[j].source, g.requests[j].sink, admissible);
      ++steps;
      if (paths.empty()) {
        if (r.failed) ++step_ok;
        break;
      }
      std::vector<double> deltas;
      for (const auto& p : paths) deltas.push_back(fixtures::path_delta_phi(g, before.load, before.tau, g.requests[j].demand, p));
      double best = *std::min_element(deltas.begin(), deltas.end());
      // Paths within rounding of the minimum are ties; the step must return one of them, and the
      // lexicographically smallest by the path order when the tie is exact.
      std::vector<Path> minimizers;
      for (std::size_t k = 0; k < paths.size(); ++k)
        if (deltas[k] <= best + 1e-12 * (1 + best)) minimizers.push_back(Path{paths[k], {}});
      bool attains = std::abs(r.delta_phi - best) <= 1e-12 * (1 + best);
      bool among = std::any_of(minimizers.begin(), minimizers.end(), [&](const Path& p) { return p.edges == r.path.edges; });
      if (attains && among) ++step_ok;
      if (r.failed) break;
    }
  }
  std::ostringstream d;
  d << "(a) " << verdict_ok << "/" << verdicts << " verdicts agree over " << graphs << " DAGs (" << infeasible
    << " infeasible); (b) " << step_ok << "/"
    << steps << " routing steps attain the brute-force minimum";
  report(5, verdict_ok == verdicts && step_ok == steps, d.str());
}

void criterion6() {
  CounterRng rng(6, 0);
  std::size_t structural_ok = 0;
  const std::size_t vectors = 1000;
  for (std::size_t k = 0; k < vectors; ++k) {
    std::size_t m = 1 + rng.uniform_below(64);
    std::vector<Rational> speeds;
    for (std::size_t i = 0; i < m; ++i)
      speeds.push_back(rational(static_cast<long>(1 + rng.uniform_below(100000)), static_cast<long>(1 + rng.uniform_below(1000))));
    SmoothingResult r = smooth_machines(RelatedInstance{speeds, {DiscreteDistribution::point_mass(1)}});
    if (check_smoothed(r.groups, m).empty()) ++structural_ok;
  }
  std::size_t tractable = 0, ratio_ok = 0;
  Rational worst = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    CounterRng g(s, derive_stream(StreamDomain::kGenerator, 3, 0));
    std::size_t m = 1 + g.uniform_below(5);
    std::size_t n = 1 + g.uniform_below(3);
    RelatedInstance inst = random_related_instance(m, n, 2, 4, g);
    SmoothingResult r = smooth_machines(inst);
    Rational before = optimal_adaptive_value(related_to_config(inst));
    Rational after = optimal_adaptive_value(related_to_config(r.instance));
    ++tractable;
    if (after <= 10 * before) ++ratio_ok;
    worst = std::max(worst, Rational(after / before));
  }
  std::ostringstream d;
  d << "(i)-(ii) " << structural_ok << "/" << vectors << " speed vectors; (iii) " << ratio_ok << "/" << tractable
    << " instances with E[OPT(smoothed)] <= 10 E[OPT], worst ratio=" << to_double(worst);
  report(6, structural_ok == vectors && ratio_ok == tractable, d.str());
}

void criterion7() {
  const std::size_t m = 64, trials = 100000;
  const double tau = 1.0;
  bool all = true;
  std::ostringstream d;
  for (auto regime : {ExpMaxRegime::kSqrtLog, ExpMaxRegime::kLogM, ExpMaxRegime::kGeometric}) {
    auto start = Clock::now();
    ExpMaxEstimate e = estimate_expected_max(regime_sums(regime, m, tau), trials, 7);
    double t = seconds_since(start);
    double bound = regime_bound(regime, m, tau);
    bool ok = e.mean <= bound && t < 60.0;
    all = all && ok;
    d << regime_name(regime) << " " << e.mean << "<=" << bound << " (" << t << "s)" << (ok ? "" : " !") << "; ";
  }
  report(7, all, d.str());
}

void criterion8(const std::vector<SuiteEntry>& suite) {
  std::size_t ok = 0;
  for (std::size_t s = 0; s < suite.size(); ++s) {
    const auto& e = suite[s];
    CounterRng rng(s, derive_stream(StreamDomain::kRounding, 0, 0));
    OfflineReport rep = offline_config_balancing(e.instance, rng);
    SimulationReport sim = simulate_policy(e.instance, fixed_assignment_policy(rep.assignment.configs), 10000, s);
    double mm = std::max<double>(static_cast<double>(e.instance.m), 16.0);
    double bound = 20.0 * std::log(mm) / std::log(std::log(mm)) * to_double(e.opt);
    if (sim.mean_makespan <= bound) ++ok;
  }
  double share = static_cast<double>(ok) / static_cast<double>(suite.size());
  std::ostringstream d;
  d << ok << "/" << suite.size() << " seeds within 20 f(m) E[OPT] (" << 100 * share << "%, need 95%)";
  report(8, share >= 0.95, d.str());
}

void criterion9() {
  auto start = Clock::now();
  bool all = true;
  std::ostringstream d;
  for (std::size_t m : {4u, 9u, 16u}) {
    Rational root = exact_sqrt_or_negative(Rational(static_cast<long>(m)));
    AdversaryOutcome fast = clairvoyance_adversary(m, always_fast_hook());
    Rational expected = 1 + Rational(static_cast<long>(m - 1)) / root;
    bool fast_ok = fast.makespan == expected;
    Rational worst = clairvoyance_adversary(m, sqrt_list_hook()).makespan;
    RelatedInstance inst = gen_clairvoyance_adversary_instance(m);
    for (std::size_t big = 0; big < m; ++big) {
      std::vector<Rational> sizes(m, 1 / root);
      sizes[big] = 1;
      worst = std::max(worst, nonclairvoyant_sqrt_list(inst, sizes).makespan);
    }
    bool list_ok = worst <= 4 * root;
    all = all && fast_ok && list_ok;
    d << "m=" << m << " fast=" << to_string(fast.makespan) << " (want " << to_string(expected) << ") sqrt-list max="
      << to_string(worst) << "; ";
  }
  double t = seconds_since(start);
  d << "time=" << t << "s";
  report(9, all && t < 1.0, d.str());
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void criterion10(const std::string& cli, const fs::path& work) {
  if (cli.empty()) {
    report(10, false, "no --cli given");
    return;
  }
  fs::create_directories(work);
  auto w = [&](const std::string& name) { return (work / name).string(); };
  auto run = [&](const std::string& args) {
    return std::system((cli + " " + args + " 2>/dev/null").c_str());
  };
  // Fixtures for the commands that read instances.
  run("gen --kind adaptivity-gap --m 4 --tau 2 --out " + w("gap.json") + " --report " + w("x.json"));
  run("gen --kind routing --m 6 --n 3 --seed 2 --out " + w("route.json") + " --report " + w("x.json"));
  run("gen --kind related-random --m 6 --n 5 --seed 4 --out " + w("rel.json") + " --report " + w("x.json"));
  run("gen --kind mixed --m 3 --n 3 --seed 9 --out " + w("tiny.json") + " --report " + w("x.json"));
  {
    std::ofstream(w("hand.json")) << R"({"type":"adaptivity-gap-hand"})";
    std::ofstream(w("restart.json")) << R"({"type":"restart","tau":"11/4"})";
  }
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "gen --kind mixed --m 3 --n 3 --seed 11 --out {out}"},
      {"smooth", "smooth --in " + w("rel.json") + " --out {out}"},
      {"offline-config", "offline --algo config --in " + w("gap.json") + " --seed 3 --trials 2000"},
      {"offline-routing", "offline --algo routing --in " + w("route.json") + " --seed 3 --trials 2000"},
      {"offline-related", "offline --algo related --in " + w("rel.json") + " --seed 3 --trials 2000"},
      {"offline-batch", "offline --algo config --batch 20 --seed 1 --trials 500"},
      {"online-config", "online --algo config --in " + w("tiny.json") + " --seed 3 --trials 2000"},
      {"online-related", "online --algo related --in " + w("rel.json") + " --seed 3 --trials 2000"},
      {"online-routing", "online --algo routing --in " + w("route.json") + " --seed 3 --trials 2000"},
      {"online-sqrt", "online --algo sqrt-baseline --in " + w("rel.json") + " --seed 3 --trials 2000"},
      {"oracle-opt", "oracle --in " + w("gap.json") + " --what opt --tau 2 --tree {out}"},
      {"oracle-restart", "oracle --in " + w("gap.json") + " --what restart --tau 11/4"},
      {"oracle-eval", "oracle --in " + w("gap.json") + " --what eval --tau 2 --policy-file " + w("hand.json")},
      {"lp-check-config", "lp-check --in " + w("gap.json") + " --tau 2.75 --dump {out}"},
      {"lp-check-routing", "lp-check --in " + w("route.json") + " --tau 1.5 --dump {out}"},
      {"expmax", "expmax --m 64 --trials 20000 --regime geo --seed 5"},
      {"simulate", "simulate --in " + w("gap.json") + " --policy-file " + w("restart.json") + " --trials 5000 --seed 8"},
  };
  std::size_t identical = 0;
  std::string mismatched;
  for (const auto& [name, pattern] : commands) {
    std::string results[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      std::string tag = name + "_" + std::to_string(k);
      std::string args = pattern;
      auto pos = args.find("{out}");
      if (pos != std::string::npos) args.replace(pos, 5, w(tag + ".out"));
      codes[k] = run(args + " --report " + w(tag + ".report") + " --csv " + w(tag + ".csv"));
      results[k] = slurp(w(tag + ".report")) + "\x1f" + slurp(w(tag + ".csv")) + "\x1f" +
                   (pos != std::string::npos ? slurp(w(tag + ".out")) : "");
    }
    bool same = codes[0] == codes[1] && codes[0] != 1 && codes[0] != -1 && results[0] == results[1] &&
                results[0].size() > 4;
    if (same) {
      ++identical;
    } else {
      mismatched += " " + name;
    }
  }
  report(10, identical == commands.size(),
         std::to_string(identical) + "/" + std::to_string(commands.size()) + " CLI runs byte-identical" +
             (mismatched.empty() ? "" : "; differing:" + mismatched));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string cli;
  std::string work = (fs::temp_directory_path() / "cbal_acceptance").string();
  app.add_option("--cli", cli, "path to the cbal executable");
  app.add_option("--work", work, "scratch directory");
  CLI11_PARSE(app, argc, argv);

  criterion1();
  auto start = Clock::now();
  auto suite = build_suite();
  double setup = seconds_since(start);
  criterion2(suite, setup);
  criterion3(suite);
  criterion4(suite);
  criterion5();
  criterion6();
  criterion7();
  criterion8(suite);
  criterion9();
  criterion10(cli, work);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}

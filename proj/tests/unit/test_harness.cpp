#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "../support/fixtures.hpp"
#include "cbal/experiment.hpp"
#include "cbal/expmax.hpp"
#include "cbal/generators.hpp"
#include "cbal/instance_io.hpp"
#include "cbal/offline.hpp"
#include "cbal/oracle.hpp"
#include "cbal/simulate.hpp"

using namespace cbal;
using fixtures::law;
using fixtures::point;

TEST_CASE("summaries") {
  std::vector<double> xs = {1, 2, 3, 4};
  CHECK(pairwise_sum(xs) == 10.0);
  auto s = summarize(xs);
  CHECK(s.mean == 2.5);
  CHECK(s.stderr_ == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  std::vector<double> one = {7};
  CHECK(summarize(one).stderr_ == 0.0);
  std::vector<double> many(1000, 0.1);
  CHECK(pairwise_sum(many) == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("simulation of deterministic and example instances") {
  RelatedInstance det{{Rational(1), Rational(1)}, {point(2), point(3), point(1)}};
  auto c = related_to_config(det);
  auto r = simulate_policy(c, fixed_assignment_policy({0, 1, 0}), 50, 3);
  CHECK(r.mean_makespan == 3.0);
  CHECK(r.stderr_makespan == 0.0);
  CHECK(r.mean_loads == std::vector<double>{3, 3});

  auto gap = related_to_config(gen_adaptivity_gap_instance(4, Rational(2)));
  auto hand = simulate_policy(gap, adaptivity_gap_hand_policy(4), 100000, 0, 2.0);
  CHECK(std::abs(hand.mean_makespan - 1.375) <= 3 * hand.stderr_makespan);
  auto again = simulate_policy(gap, adaptivity_gap_hand_policy(4), 100000, 0, 2.0);
  CHECK(again.mean_makespan == hand.mean_makespan);
  CHECK(again.stderr_makespan == hand.stderr_makespan);
  CHECK(again.mean_loads == hand.mean_loads);
  CHECK(again.mean_exceptional == hand.mean_exceptional);
}

TEST_CASE("property: Monte Carlo agrees with exact evaluation") {
  int agree = 0, total = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto inst = fixtures::tiny_instance(s);
    std::vector<std::size_t> configs;
    for (std::size_t j = 0; j < inst.requests.size(); ++j) configs.push_back(s % inst.requests[j].configs.size());
    auto policy = fixed_assignment_policy(configs);
    Rational exact = evaluate_policy(inst, policy, Rational(1)).makespan;
    auto sim = simulate_policy(inst, policy, 4000, s);
    ++total;
    if (std::abs(sim.mean_makespan - to_double(exact)) <= 4 * sim.stderr_makespan + 1e-12) ++agree;
  }
  CHECK(agree >= 99 * total / 100);
}

TEST_CASE("property: realized exceptional load stays near the reported bound") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto inst = fixtures::tiny_instance(s);
    CounterRng rng(s, derive_stream(StreamDomain::kRounding, 0, 0));
    auto report = offline_config_balancing(inst, rng);
    const std::size_t n = 4000;
    auto sim = simulate_policy(inst, fixed_assignment_policy(report.assignment.configs), n, s, report.tau);
    double worst = 0;
    for (const auto& req : inst.requests) {
      double big = 0;
      for (const auto& c : req.configs)
        for (const auto& a : c.law.atoms()) big = std::max(big, to_double(a.value * c.max_multiplier()));
      worst += big;
    }
    CHECK(sim.mean_exceptional <= report.exceptional_load + 4 * worst / std::sqrt(double(n)) + 1e-12);
  }
}

TEST_CASE("expected maximum estimates") {
  SumSpec tau_point{{TermGroup{point(1), 1}}, 1.0};
  auto e = estimate_expected_max({tau_point}, 100, 0);
  CHECK(e.mean == 1.0);
  CHECK(e.stderr_ == 0.0);
  SumSpec ber1{{TermGroup{DiscreteDistribution::scaled_bernoulli(Rational(1), Rational(1)), 1}}, 1.0};
  CHECK(estimate_expected_max(std::vector<SumSpec>(8, ber1), 100, 0).mean == 1.0);
  auto sums = regime_sums(ExpMaxRegime::kSqrtLog, 64, 1.0);
  auto est = estimate_expected_max(sums, 20000, 1);
  CHECK(est.mean <= regime_bound(ExpMaxRegime::kSqrtLog, 64, 1.0));
  CHECK(est.mean >= 1.0);
  CHECK(parse_regime("geo") == ExpMaxRegime::kGeometric);
  CHECK_THROWS(parse_regime("nope"));
}

TEST_CASE("experiments") {
  ExperimentSpec bad;
  bad.command = "offline";
  bad.algorithm = "simplex-magic";
  bad.batch = 1;
  CHECK_THROWS_AS(run_experiment(bad), UsageError);

  ExperimentSpec batch;
  batch.command = "offline";
  batch.algorithm = "config";
  batch.batch = 100;
  batch.trials = 50;
  auto a = run_experiment(batch);
  auto b = run_experiment(batch);
  CHECK(a.csv_rows.size() == 100);
  CHECK(format_csv(a) == format_csv(b));
  CHECK(a.report.dump() == b.report.dump());
  CHECK(a.exit_code == 0);

  auto path = (std::filesystem::temp_directory_path() / "cbal_unrelated_fixture.json").string();
  write_instance(UnrelatedInstance{2, {{point(1), point(2)}, {law({{0, rational(1, 2)}, {2, rational(1, 2)}}), point(1)}}},
                 path);
  ExperimentSpec fixture;
  fixture.command = "offline";
  fixture.algorithm = "config";
  fixture.input = path;
  fixture.trials = 200;
  auto out = run_experiment(fixture);
  CHECK(out.report.contains("tau"));
  CHECK(out.report.contains("truncated_loads"));
  CHECK(out.report["simulation"].contains("mean_makespan"));

  ExperimentSpec fail;
  fail.command = "online";
  fail.algorithm = "config";
  fail.input = path;
  fail.lambda = 0.01;
  fail.trials = 10;
  auto f = run_experiment(fail);
  CHECK(f.exit_code == 2);
  CHECK(f.report.contains("certificate"));
}

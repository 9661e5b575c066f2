#include <cmath>
#include <map>

#include "doctest.h"
#include "../support/fixtures.hpp"
#include "cbal/config_lp.hpp"
#include "cbal/generators.hpp"
#include "cbal/offline.hpp"
#include "cbal/oracle.hpp"
#include "cbal/simulate.hpp"

using namespace cbal;
using fixtures::law;
using fixtures::point;

TEST_CASE("randomized rounding") {
  FractionalSolution certain;
  certain.requests = {{{2, {}, 1.0}}};
  CounterRng rng(1, 0);
  for (int k = 0; k < 20; ++k) CHECK(randomized_round(certain, rng).configs[0] == 2);

  FractionalSolution half;
  half.requests = {{{0, {}, 0.5}, {1, {}, 0.5}}};
  int ones = 0;
  const int n = 100000;
  for (int k = 0; k < n; ++k) ones += static_cast<int>(randomized_round(half, rng).configs[0]);
  CHECK(std::abs(ones / double(n) - 0.5) <= 0.01);
}

TEST_CASE("rounded truncated loads average to the LP rows") {
  auto inst = fixtures::tiny_instance(17);
  auto search = min_feasible_tau(inst);
  TruncationThreshold tau(search.tau);
  std::vector<double> lp_rows(inst.m, 0.0);
  for (std::size_t j = 0; j < inst.requests.size(); ++j)
    for (const auto& ch : search.solution.requests[j]) {
      auto proxy = proxy_vector(inst.requests[j].configs[ch.config], tau);
      for (std::size_t i = 0; i < inst.m; ++i) lp_rows[i] += ch.weight * proxy[i + 1];
    }
  std::vector<double> avg(inst.m, 0.0);
  CounterRng rng(2, 0);
  const int n = 20000;
  for (int k = 0; k < n; ++k) {
    auto a = randomized_round(search.solution, rng);
    for (std::size_t j = 0; j < inst.requests.size(); ++j) {
      auto proxy = proxy_vector(inst.requests[j].configs[a.configs[j]], tau);
      for (std::size_t i = 0; i < inst.m; ++i) avg[i] += proxy[i + 1] / n;
    }
  }
  for (std::size_t i = 0; i < inst.m; ++i) {
    CHECK(lp_rows[i] <= search.tau + 1e-7);
    CHECK(std::abs(avg[i] - lp_rows[i]) <= 0.05 * (1 + lp_rows[i]));
  }
}

TEST_CASE("offline configuration balancing") {
  auto gap = related_to_config(gen_adaptivity_gap_instance(4, Rational(2)));
  CounterRng rng(0, 0);
  auto report = offline_config_balancing(gap, rng);
  CHECK(report.tau <= 2.75);
  CHECK(report.lp_status == "feasible");
  CHECK(report.opt_lower_bound <= 1.375);

  ConfigInstance one;
  one.m = 1;
  one.requests.push_back(Request{0, {Configuration{{1}, point(3)}}});
  auto r1 = offline_config_balancing(one, rng);
  CHECK(r1.assignment.configs == std::vector<std::size_t>{0});
  auto sim = simulate_policy(one, fixed_assignment_policy(r1.assignment.configs), 10, 0);
  CHECK(sim.mean_makespan == 3.0);
}

TEST_CASE("property: certified lower bounds agree with the oracle") {
  for (std::uint64_t s = 0; s < 80; ++s) {
    auto inst = fixtures::tiny_instance(s);
    CounterRng rng(s, derive_stream(StreamDomain::kRounding, 0, 0));
    auto report = offline_config_balancing(inst, rng);
    Rational opt = optimal_adaptive_value(inst);
    CHECK(rational_from_double(report.opt_lower_bound) < opt);
    CHECK(report.exceptional_load <= report.tau + 1e-9);
  }
}

TEST_CASE("offline routing") {
  auto g = fixtures::triangle(point(1));
  CounterRng rng(0, 0);
  auto report = offline_routing(g, rng);
  CHECK(report.tau >= 1.0);
  CHECK(report.tau <= 1.001);
  REQUIRE(report.assignment.paths.size() == 1);
  CHECK(report.assignment.paths[0].edges == std::vector<std::size_t>{0, 1});

  RoutingInstance line;
  line.vertices = 3;
  line.edges = {{0, 1, Rational(1)}, {1, 2, Rational(1)}};
  line.requests = {{0, 2, point(1)}, {1, 2, point(2)}};
  auto lr = offline_routing(line, rng);
  CHECK(lr.assignment.paths[0].edges == std::vector<std::size_t>{0, 1});
  CHECK(lr.assignment.paths[1].edges == std::vector<std::size_t>{1});
  CHECK(lr.truncated_loads[1] + lr.exceptional_load == doctest::Approx(3.0));
}

TEST_CASE("property: rounded paths use admissible edges only") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto g = fixtures::random_dag(s);
    CounterRng rng(s, 0);
    auto report = offline_routing(g, rng);
    Rational tau = TruncationThreshold(report.tau).exact();
    for (std::size_t j = 0; j < g.requests.size(); ++j)
      for (auto e : report.assignment.paths[j].edges)
        CHECK(mean_exact(g.requests[j].demand) / g.edges[e].capacity <= tau);
  }
}

TEST_CASE("group list scheduling picks the least loaded machine") {
  // Two identical machines in one group; job 0 realized 1 on machine 0, job 1 realized 1/2 on machine 1.
  RelatedInstance r{{Rational(1), Rational(1)}, {point(1), point(rational(1, 2)), point(1)}};
  ConfigInstance config = related_to_config(r);
  SmoothedGroups groups;
  groups.groups.push_back(SpeedGroup{Rational(1), {0, 1}, {0, 1}});
  auto policy = group_list_policy(config, groups, {0, 0, 0});
  std::vector<HistoryRecord> history = {{0, 0, 0}, {1, 1, 0}};
  auto d = policy(history);
  REQUIRE(d);
  CHECK(d->request == 2);
  CHECK(d->config == 1);

  CounterRng rng(0, 0);
  auto single = offline_related(RelatedInstance{{Rational(2)}, {point(1), law({{0, rational(1, 2)}, {2, rational(1, 2)}})}}, rng);
  auto v = evaluate_policy(single.config, single.policy, Rational(1));
  CHECK(v.makespan == 1);
}

TEST_CASE("property: list scheduling respects the pathwise group bound") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    CounterRng gen(s, derive_stream(StreamDomain::kGenerator, 2, 0));
    auto inst = random_related_instance(1 + gen.uniform_below(6), 1 + gen.uniform_below(6), 2, 4, gen);
    CounterRng rng(s, 0);
    auto out = offline_related(inst, rng);
    Rational tau = TruncationThreshold(out.report.tau).exact();
    for (std::uint64_t t = 0; t < 20; ++t) {
      auto history = simulate_once(out.config, out.policy, s, t);
      CHECK(list_scheduling_violation(out.config, out.smoothing.groups, out.job_group, history, tau) == "");
    }
  }
}

TEST_CASE("an exceptional job can break the truncated-only list-scheduling bound") {
  RelatedInstance r{{Rational(1), Rational(1)}, {point(10), point(4), point(4), point(4)}};
  ConfigInstance config = related_to_config(r);
  SmoothedGroups groups;
  groups.groups.push_back(SpeedGroup{Rational(1), {0, 1}, {0, 1}});
  std::vector<std::size_t> job_group(4, 0);
  auto history = simulate_once(config, group_list_policy(config, groups, job_group), 0, 0);
  auto load = loads_exact(config, history);
  CHECK(load == std::vector<Rational>{10, 12});
  // truncated average 6 plus the largest truncated job 4 is below machine 1's truncated load 12
  CHECK(load[1] > Rational(6 + 4));
  CHECK(list_scheduling_violation(config, groups, job_group, history, Rational(5)) == "");
}

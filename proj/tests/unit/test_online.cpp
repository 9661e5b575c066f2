#include <cmath>

#include "doctest.h"
#include "../support/fixtures.hpp"
#include "cbal/online.hpp"
#include "cbal/oracle.hpp"
#include "cbal/potential.hpp"
#include "cbal/smoothing.hpp"

using namespace cbal;
using fixtures::law;
using fixtures::point;

TEST_CASE("potential values") {
  CHECK(potential({0, 0, 0}, 1.0) == 3.0);
  CHECK(potential({2, 2, 2}, 2.0) == doctest::Approx(4.5));
  CHECK(potential({0, 1}, 2.0) == doctest::Approx(1 + std::sqrt(1.5)));
  CHECK(potential_capacity(1) == doctest::Approx(3.4190).epsilon(1e-4));
}

TEST_CASE("online step arithmetic") {
  auto state = PotentialState::fresh(2, 1.0);
  auto r = online_step(state, {{0, 1, 0}, {0, 0, 0.5}});
  CHECK_FALSE(r.failed);
  CHECK(r.choice == 1);
  CHECK(r.delta_phi == doctest::Approx(std::pow(1.5, 0.25) - 1));
  CHECK(state.load == std::vector<double>{0, 0, 0.5});

  auto lone = PotentialState::fresh(2, 1.0);
  CHECK(online_step(lone, {{0, 2, 0}}).choice == 0);

  auto tight = PotentialState::fresh(1, 1.0);
  auto f = online_step(tight, {{0, 3.5 * 2.0}});
  CHECK(f.failed);
  CHECK(tight.load == std::vector<double>{0, 0});

  auto tie = PotentialState::fresh(2, 1.0);
  CHECK(online_step(tie, {{0, 1, 0}, {0, 0, 1}}).choice == 0);
}

TEST_CASE("property: argmin is invariant under common scaling, loads only grow") {
  CounterRng rng(4, 0);
  for (int k = 0; k < 300; ++k) {
    std::size_t m = 1 + rng.uniform_below(4);
    double lambda = 0.5 + rng.uniform01() * 3;
    double f = 0.25 + rng.uniform01() * 4;
    auto a = PotentialState::fresh(m, lambda);
    auto b = PotentialState::fresh(m, lambda * f);
    for (std::size_t i = 0; i <= m; ++i) {
      a.load[i] = rng.uniform01() * lambda;
      b.load[i] = a.load[i] * f;
    }
    std::vector<std::vector<double>> px, scaled;
    for (int c = 0; c < 3; ++c) {
      std::vector<double> x(m + 1);
      for (auto& v : x) v = rng.uniform01() * lambda;
      px.push_back(x);
      for (auto& v : x) v *= f;
      scaled.push_back(x);
    }
    auto before = a.load;
    auto ra = online_step(a, px);
    auto rb = online_step(b, scaled);
    CHECK(ra.choice == rb.choice);
    if (!ra.failed)
      for (std::size_t i = 0; i <= m; ++i) CHECK(a.load[i] >= before[i]);
  }
}

TEST_CASE("guess and double") {
  ConfigInstance c;
  c.m = 1;
  c.requests.push_back(Request{0, {Configuration{{1}, point(1)}}});
  c.requests.push_back(Request{1, {Configuration{{1}, point(10)}}});
  auto run = online_config_balancing(c, 1.0);
  CHECK(run.choices.size() == 2);
  CHECK(run.phases >= 2);
  CHECK(run.final_lambda > run.initial_lambda);
  auto again = online_config_balancing(c, 1.0);
  CHECK(again.final_lambda == run.final_lambda);
  CHECK(again.trace.size() == run.trace.size());

  // At lambda=1 both sizes are exceptional and 3+5 passes ell*tau = 6.84; after one doubling 5 alone fits.
  ConfigInstance once;
  once.m = 1;
  once.requests.push_back(Request{0, {Configuration{{1}, point(3)}}});
  once.requests.push_back(Request{1, {Configuration{{1}, point(5)}}});
  auto r = online_config_balancing(once, 1.0);
  CHECK(r.phases == 2);
  CHECK(r.final_lambda == 2.0);

  auto calm = online_config_balancing(c, 100.0);
  CHECK(calm.phases == 1);
  auto fixed = online_fixed_lambda(c, 100.0);
  CHECK(fixed.choices == calm.choices);
}

TEST_CASE("related group proxies") {
  SmoothedGroups groups;
  groups.groups.push_back(SpeedGroup{Rational(1), {0, 1, 2}, {0, 1, 2}});
  groups.groups.push_back(SpeedGroup{Rational(2), {3, 4}, {3, 4}});
  auto px = related_group_proxies(groups, point(1), TruncationThreshold(2.0));
  REQUIRE(px.size() == 2);
  CHECK(px[0] == std::vector<double>{0, 1.0 / 3, 0});
  CHECK(px[1] == std::vector<double>{0, 0, 0.25});
  auto state = PotentialState::fresh(2, 1.0);
  auto machine = online_related_step(groups, state, point(1), std::vector<Rational>(5, Rational(0)));
  REQUIRE(machine);
  CHECK(*machine == 3);

  SmoothedGroups one;
  one.groups.push_back(SpeedGroup{Rational(1), {0}, {0}});
  auto edge = related_group_proxies(one, point(2), TruncationThreshold(2.0));
  CHECK(edge[0] == std::vector<double>{2, 0});

  SmoothedGroups pair;
  pair.groups.push_back(SpeedGroup{Rational(1), {0, 1}, {0, 1}});
  auto st = PotentialState::fresh(1, 1.0);
  auto pick = online_related_step(pair, st, point(1), {Rational(1), rational(1, 2)});
  CHECK(*pick == 1);
}

TEST_CASE("routing step on the triangle") {
  auto g = fixtures::triangle(point(1));
  auto state = PotentialState::fresh(3, 1.5);
  std::vector<double> px;
  double direct = route_increase(g, state, 0, Path{{2}, {0, 2}}, &px);
  CHECK(direct == doctest::Approx(std::pow(1.5, 2.0 / 3) - 1));
  double two_hop = route_increase(g, state, 0, Path{{0, 1}, {0, 1, 2}});
  CHECK(two_hop == doctest::Approx(2 * (std::pow(1.5, 1.0 / 3) - 1)));
  auto r = online_route_step(g, state, 0);
  CHECK_FALSE(r.failed);
  CHECK(r.path.edges == std::vector<std::size_t>{0, 1});

  RoutingInstance line;
  line.vertices = 2;
  line.edges = {{0, 1, Rational(1)}};
  line.requests = {{0, 1, point(1)}};
  auto s2 = PotentialState::fresh(1, 2.0);
  CHECK(online_route_step(line, s2, 0).path.edges == std::vector<std::size_t>{0});
}

TEST_CASE("property: potential stays below 2(m+1) at lambda = E[OPT]") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto inst = fixtures::tiny_instance(s);
    double lambda = to_double_up(optimal_adaptive_value(inst));
    auto run = online_fixed_lambda(inst, lambda);
    CHECK(run.choices.size() == inst.requests.size());
    CHECK(potential(run.final_state.load, run.final_state.tau) <= 2.0 * (inst.m + 1) + 1e-9);
  }
}

TEST_CASE("property: routing step attains the brute-force minimum") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    auto g = fixtures::random_dag(s);
    auto state = PotentialState::fresh(g.edges.size(), routing_initial_lambda(g));
    for (std::size_t j = 0; j < g.requests.size(); ++j) {
      auto before = state;
      auto r = online_route_step(g, state, j);
      auto admissible = admissible_edges(g, j, TruncationThreshold(before.tau).exact());
      auto paths = fixtures::all_paths(g, g.requests[j].source, g.requests[j].sink, admissible);
      if (paths.empty()) {
        CHECK(r.failed);
        break;
      }
      double best = 1e300;
      for (const auto& p : paths) best = std::min(best, fixtures::path_delta_phi(g, before.load, before.tau, g.requests[j].demand, p));
      CHECK(std::abs(r.delta_phi - best) <= 1e-12 * (1 + best));
      if (r.failed) break;
    }
  }
}

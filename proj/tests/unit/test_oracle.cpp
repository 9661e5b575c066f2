#include "doctest.h"
#include "../support/fixtures.hpp"
#include "cbal/adversary.hpp"
#include "cbal/baseline.hpp"
#include "cbal/generators.hpp"
#include "cbal/oracle.hpp"
#include "cbal/policy.hpp"

using namespace cbal;
using fixtures::law;
using fixtures::point;

namespace {

ConfigInstance gap4() { return related_to_config(gen_adaptivity_gap_instance(4, Rational(2))); }

ConfigInstance machines(std::size_t m, std::vector<DiscreteDistribution> jobs) {
  std::vector<Rational> speeds(m, Rational(1));
  return related_to_config(RelatedInstance{speeds, std::move(jobs)});
}

}  // namespace

TEST_CASE("adaptivity-gap instance") {
  auto inst = gap4();
  auto opt = optimal_adaptive(inst, Rational(2));
  CHECK(opt.value.makespan == rational(11, 8));
  auto hand = evaluate_policy(inst, adaptivity_gap_hand_policy(4), Rational(2));
  CHECK(hand.makespan == rational(11, 8));
  CHECK(hand.exceptional == 4);
  AdaptiveOracle oracle(inst);
  CHECK(evaluate_policy(inst, oracle.policy(), Rational(2)).makespan == oracle.value());
}

TEST_CASE("trivial oracle values") {
  CHECK(optimal_adaptive_value(machines(1, {point(rational(5, 2))})) == rational(5, 2));
  CHECK(optimal_adaptive_value(machines(2, {point(1), point(1)})) == 1);
  ConfigInstance empty;
  empty.m = 2;
  auto v = evaluate_policy(empty, fixed_assignment_policy({}), Rational(1));
  CHECK(v.makespan == 0);
  CHECK(v.exceptional == 0);
}

TEST_CASE("fixed assignments evaluate exactly") {
  auto inst = machines(2, {law({{0, rational(1, 2)}, {2, rational(1, 2)}}), point(1)});
  // both on machine 0: 1 or 3; split: max(X, 1) = 1 or 2
  CHECK(evaluate_policy(inst, fixed_assignment_policy({0, 0}), Rational(4)).makespan == 2);
  auto split = evaluate_policy(inst, fixed_assignment_policy({0, 1}), Rational(2));
  CHECK(split.makespan == rational(3, 2));
  CHECK(split.exceptional == 1);
  CHECK_THROWS_AS(evaluate_policy(inst, fixed_assignment_policy({0}), Rational(2)), IncompletePolicy);
}

TEST_CASE("restart policy examples") {
  auto one = machines(1, {law({{0, rational(1, 2)}, {10, rational(1, 2)}})});
  auto r = evaluate_restart_policy(one, Rational(10));
  CHECK(r.value.makespan == 5);
  CHECK(r.value.exceptional == 5);

  auto calm = machines(2, {point(1), law({{0, rational(1, 2)}, {1, rational(1, 2)}})});
  auto opt = optimal_adaptive_value(calm);
  auto rc = evaluate_restart_policy(calm, Rational(100));
  CHECK(rc.value.makespan == opt);
  CHECK(rc.expected_restarts == 0);

  auto gap = evaluate_restart_policy(gap4(), rational(11, 4));
  CHECK(gap.value.makespan == rational(11, 8));
  CHECK(gap.value.exceptional == 0);
}

TEST_CASE("property: oracle matches plain recursion and restart keeps its guarantees") {
  for (std::uint64_t s = 0; s < 120; ++s) {
    auto inst = fixtures::tiny_instance(s);
    AdaptiveOracle oracle(inst);
    Rational opt = oracle.value();
    CHECK(opt == fixtures::brute_force_opt(inst));
    CHECK(evaluate_policy(inst, oracle.policy(), 2 * opt).makespan == opt);
    auto r = evaluate_restart_policy(inst, 2 * opt);
    CHECK(r.value.makespan <= 2 * opt);
    CHECK(r.value.exceptional <= 2 * opt);
    CHECK(r.max_committed_expected_max <= 2 * opt);
  }
}

TEST_CASE("property: optimum is monotone under request removal") {
  for (std::uint64_t s = 0; s < 120; ++s) {
    auto inst = fixtures::tiny_instance(s);
    Rational full = optimal_adaptive_value(inst);
    for (std::size_t drop = 0; drop < inst.requests.size(); ++drop) {
      auto sub = inst;
      sub.requests.erase(sub.requests.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK(optimal_adaptive_value(sub) <= full);
    }
  }
}

TEST_CASE("state limit") {
  auto inst = fixtures::tiny_instance(7);
  AdaptiveOracle small(inst, 1);
  if (inst.requests.size() > 0) CHECK_THROWS_AS(small.value(), StateSpaceExceeded);
}

TEST_CASE("policy tree export") {
  auto text = policy_tree_json(gap4(), adaptivity_gap_hand_policy(4));
  CHECK(text.find("\"decision\"") != std::string::npos);
  CHECK(text.find("\"children\"") != std::string::npos);
}

TEST_CASE("clairvoyance adversary") {
  auto fast = clairvoyance_adversary(4, always_fast_hook());
  CHECK(fast.makespan == rational(5, 2));
  CHECK(fast.clairvoyant_opt == 1);
  auto slow_first = clairvoyance_adversary(4, [](std::size_t job, const std::vector<Rational>&,
                                                 const std::vector<Rational>&) -> std::size_t { return job == 0 ? 1 : 0; });
  CHECK(slow_first.sizes[0] == 1);
  CHECK(slow_first.makespan >= 2);
  auto single = clairvoyance_adversary(1, always_fast_hook());
  CHECK(single.makespan == 1);
}

TEST_CASE("square-root list scheduling") {
  auto inst = gen_clairvoyance_adversary_instance(4);
  SqrtListScheduler sched(inst.speeds);
  CHECK(sched.eligible() == std::vector<std::size_t>{0, 1, 2, 3});
  auto one = nonclairvoyant_sqrt_list(RelatedInstance{{Rational(1)}, {point(1), point(2)}}, {Rational(1), Rational(2)});
  CHECK(one.makespan == 3);
  auto wide = SqrtListScheduler({Rational(4), Rational(1), Rational(1), Rational(1), Rational(1)});
  CHECK(wide.eligible() == std::vector<std::size_t>{0});
}

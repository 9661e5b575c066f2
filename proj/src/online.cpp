#include "cbal/online.hpp"

#include <algorithm>
#include <stdexcept>

#include "cbal/offline.hpp"
#include "cbal/reductions.hpp"

namespace cbal {

double initial_lambda(const Request& first) {
  double best = -1.0;
  double smallest_positive = -1.0;
  for (const auto& config : first.configs) {
    double v = to_double(expected_max_exact(config));
    if (best < 0 || v < best) best = v;
    if (v > 0 && (smallest_positive < 0 || v < smallest_positive)) smallest_positive = v;
  }
  if (best > 0) return best;
  return smallest_positive > 0 ? smallest_positive : 1.0;
}

OnlineRun online_config_balancing(const ConfigInstance& instance, double lambda0) {
  validate(instance);
  return guess_and_double(instance.requests.size(), instance.m, lambda0,
                          [&](PotentialState& state, std::size_t j) { return online_step(state, instance.requests[j]); });
}

OnlineRun online_config_balancing(const ConfigInstance& instance) {
  double lambda0 = instance.requests.empty() ? 1.0 : initial_lambda(instance.requests.front());
  return online_config_balancing(instance, lambda0);
}

OnlineRun online_fixed_lambda(const ConfigInstance& instance, double lambda) {
  validate(instance);
  OnlineRun run;
  run.initial_lambda = run.final_lambda = lambda;
  PotentialState state = PotentialState::fresh(instance.m, lambda);
  for (std::size_t j = 0; j < instance.requests.size(); ++j) {
    StepResult result = online_step(state, instance.requests[j]);
    if (result.failed) break;
    run.choices.push_back(result.choice);
    run.paths.emplace_back();
    run.trace.push_back({j, 0, lambda, std::move(result)});
  }
  run.final_state = std::move(state);
  return run;
}

std::vector<std::vector<double>> related_group_proxies(const SmoothedGroups& groups, const DiscreteDistribution& job,
                                                       const TruncationThreshold& tau) {
  const std::size_t k = groups.groups.size();
  std::vector<std::vector<double>> proxies;
  for (std::size_t c = 0; c < k; ++c) {
    const auto& group = groups.groups[c];
    // X / s truncated at tau is (X truncated at tau s) / s.
    Rational threshold = tau.exact() * group.speed;
    std::vector<double> x(k + 1, 0.0);
    x[0] = to_double(exceptional_mean_exact(job, threshold) / group.speed);
    x[c + 1] = to_double(truncated_mean_exact(job, threshold) / group.speed /
                         Rational(static_cast<unsigned long>(group.count())));
    proxies.push_back(std::move(x));
  }
  return proxies;
}

std::optional<std::size_t> online_related_step(const SmoothedGroups& groups, PotentialState& state,
                                               const DiscreteDistribution& job,
                                               const std::vector<Rational>& realized_loads, StepResult* detail) {
  StepResult result = online_step(state, related_group_proxies(groups, job, TruncationThreshold(state.tau)));
  if (detail) *detail = result;
  if (result.failed) return std::nullopt;
  const auto& machines = groups.groups[result.choice].machines;
  std::size_t best = machines.front();
  for (std::size_t i : machines) {
    if (realized_loads[i] < realized_loads[best] || (realized_loads[i] == realized_loads[best] && i < best)) best = i;
  }
  return best;
}

OnlineRelated online_related(const RelatedInstance& instance) {
  validate(instance);
  OnlineRelated out;
  out.smoothing = smooth_machines(instance);
  out.config = related_to_config(out.smoothing.instance);
  const auto& groups = out.smoothing.groups;
  const auto& jobs = out.smoothing.instance.jobs;
  double lambda0 = 1.0;
  if (!jobs.empty()) {
    // Cheapest expected size of the first job over the groups: min_c E[X_1] / s_c.
    Rational fastest = groups.groups.back().speed;
    Rational mean = mean_exact(jobs.front());
    lambda0 = mean > 0 ? to_double(mean / fastest) : 1.0;
  }
  out.run = guess_and_double(jobs.size(), groups.groups.size(), lambda0, [&](PotentialState& state, std::size_t j) {
    return online_step(state, related_group_proxies(groups, jobs[j], TruncationThreshold(state.tau)));
  });
  out.job_group = out.run.choices;
  out.policy = group_list_policy(out.config, groups, out.job_group);
  return out;
}

}  // namespace cbal

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cbal/graph.hpp"
#include "cbal/instance.hpp"
#include "cbal/policy.hpp"
#include "cbal/potential.hpp"
#include "cbal/smoothing.hpp"

namespace cbal {

/// min_c E[max_i X_i(c)] over the first request. A zero minimum falls back to
/// the smallest positive value among that request's configurations, then to 1.
double initial_lambda(const Request& first);

/// Online configuration balancing with guess-and-double.
OnlineRun online_config_balancing(const ConfigInstance& instance);
OnlineRun online_config_balancing(const ConfigInstance& instance, double lambda0);

/// Runs the greedy at a fixed lambda without doubling. Stops at the first
/// failure; the returned run then has fewer choices than requests.
OnlineRun online_fixed_lambda(const ConfigInstance& instance, double lambda);

/// Group proxies for one job: x_0 = E[(X/s_c)^E], x_c = E[(X/s_c)^T] / m_c.
std::vector<std::vector<double>> related_group_proxies(const SmoothedGroups& groups, const DiscreteDistribution& job,
                                                       const TruncationThreshold& tau);

/// Picks a group by the greedy potential step (state has one resource per
/// group plus the virtual one), then the least realized-loaded machine of
/// that group (lowest id on ties). nullopt on a failed step.
std::optional<std::size_t> online_related_step(const SmoothedGroups& groups, PotentialState& state,
                                               const DiscreteDistribution& job,
                                               const std::vector<Rational>& realized_loads,
                                               StepResult* detail = nullptr);

struct OnlineRelated {
  SmoothingResult smoothing;
  ConfigInstance config;                // smoothed instance, one configuration per machine
  std::vector<std::size_t> job_group;   // online group choices (independent of realizations)
  OnlineRun run;
  AdaptivePolicy policy;                // list scheduling inside the chosen groups
};

OnlineRelated online_related(const RelatedInstance& instance);

/// Greedy path for routing request j. Restricted to E_j at the state's tau;
/// guesses the bottleneck capacity and runs a shortest-path search with edge
/// weights (3/2)^((L_e + E[X^T_ej])/tau) - (3/2)^(L_e/tau); among the
/// candidates picks the smallest total increase including the exceptional
/// term at the bottleneck (lexicographically smallest vertex sequence on
/// ties). Marked failed when no admissible path exists or the cap is breached.
StepResult online_route_step(const RoutingInstance& graph, PotentialState& state, std::size_t request);

/// Potential increase of routing request j along path at the state's loads.
double route_increase(const RoutingInstance& graph, const PotentialState& state, std::size_t request,
                      const Path& path, std::vector<double>* proxy = nullptr);

/// E[X_j] divided by the widest-path bottleneck of request j.
double routing_initial_lambda(const RoutingInstance& graph);

OnlineRun online_routing(const RoutingInstance& graph);

}  // namespace cbal

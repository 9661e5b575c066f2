#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cbal/config_lp.hpp"
#include "cbal/graph.hpp"
#include "cbal/instance.hpp"
#include "cbal/policy.hpp"
#include "cbal/rng.hpp"
#include "cbal/smoothing.hpp"

namespace cbal {

/// One choice per request: a configuration index, plus the path for routing.
struct NonAdaptiveAssignment {
  std::vector<std::size_t> configs;
  std::vector<Path> paths;
};

struct OfflineReport {
  double tau = 0.0;
  std::string lp_status;  // "feasible" at tau
  /// E[OPT] > this, because LP_C was infeasible at twice the value (0 if never certified).
  double opt_lower_bound = 0.0;
  NonAdaptiveAssignment assignment;
  std::vector<double> truncated_loads;  // expected truncated load per resource at tau
  double exceptional_load = 0.0;        // sum_j E[max_i X^E_ij(c_j)]
  std::size_t lp_solves = 0;
};

/// Independent categorical draw per request with probabilities y*.
NonAdaptiveAssignment randomized_round(const FractionalSolution& solution, CounterRng& rng);

/// Expected truncated loads and total exceptional load of a fixed assignment.
void fill_assignment_loads(const ConfigInstance& instance, const TruncationThreshold& tau, OfflineReport& report);

/// tau search on LP_C, then randomized rounding.
OfflineReport offline_config_balancing(const ConfigInstance& instance, CounterRng& rng, double eps = 1e-3);

/// tau search on the path LP (column generation), then per-request path rounding.
OfflineReport offline_routing(const RoutingInstance& graph, CounterRng& rng, double eps = 1e-3);

struct RelatedOffline {
  SmoothingResult smoothing;
  ConfigInstance config;               // smoothed instance, one configuration per machine
  std::vector<std::size_t> job_group;  // group of the machine each job was rounded to
  OfflineReport report;
  /// Jobs in index order; each goes to the least realized-loaded machine of
  /// its group (lowest id on ties).
  AdaptivePolicy policy;
};

RelatedOffline offline_related(const RelatedInstance& instance, CounterRng& rng, double eps = 1e-3);

/// List-scheduling policy for fixed job-to-group choices on a smoothed instance.
AdaptivePolicy group_list_policy(const ConfigInstance& config, const SmoothedGroups& groups,
                                 std::vector<std::size_t> job_group);

/// Pathwise list-scheduling bound on a complete history of group_list_policy:
/// every machine of group k ends with at most (1/m_k) sum_{j->k} X_kj + max_{j->k} X_kj,
/// hence at most avg truncated + tau + 2 sum exceptional. Empty string when it holds.
std::string list_scheduling_violation(const ConfigInstance& config, const SmoothedGroups& groups,
                                      const std::vector<std::size_t>& job_group,
                                      const std::vector<HistoryRecord>& history, const Rational& tau);

}  // namespace cbal

#include "cbal/offline.hpp"

#include <algorithm>

#include "cbal/path_lp.hpp"
#include "cbal/reductions.hpp"

namespace cbal {

NonAdaptiveAssignment randomized_round(const FractionalSolution& solution, CounterRng& rng) {
  NonAdaptiveAssignment out;
  for (const auto& choices : solution.requests) {
    double u = rng.uniform01();
    double cumulative = 0.0;
    std::size_t pick = choices.size() - 1;
    for (std::size_t k = 0; k < choices.size(); ++k) {
      cumulative += choices[k].weight;
      if (u < cumulative) {
        pick = k;
        break;
      }
    }
    out.configs.push_back(choices[pick].config);
    out.paths.push_back(choices[pick].path);
  }
  return out;
}

void fill_assignment_loads(const ConfigInstance& instance, const TruncationThreshold& tau, OfflineReport& report) {
  std::vector<Rational> trunc(instance.m, Rational(0));
  Rational exceptional = 0;
  for (std::size_t j = 0; j < instance.requests.size(); ++j) {
    const auto& config = instance.requests[j].configs[report.assignment.configs[j]];
    for (std::size_t i = 0; i < instance.m; ++i) trunc[i] += truncated_resource_mean_exact(config, i, tau.exact());
    exceptional += exceptional_max_mean_exact(config, tau.exact());
  }
  report.truncated_loads.clear();
  for (const auto& t : trunc) report.truncated_loads.push_back(to_double(t));
  report.exceptional_load = to_double(exceptional);
}

OfflineReport offline_config_balancing(const ConfigInstance& instance, CounterRng& rng, double eps) {
  validate(instance);
  TauSearchResult search = min_feasible_tau(instance, eps);
  OfflineReport report;
  report.tau = search.tau;
  report.lp_status = "feasible";
  report.opt_lower_bound = search.infeasible / 2;
  report.lp_solves = search.solves;
  report.assignment = randomized_round(search.solution, rng);
  report.assignment.paths.clear();
  fill_assignment_loads(instance, TruncationThreshold(report.tau), report);
  return report;
}

OfflineReport offline_routing(const RoutingInstance& graph, CounterRng& rng, double eps) {
  validate(graph);
  RoutingTauResult search = min_feasible_routing_tau(graph, eps);
  OfflineReport report;
  report.tau = search.tau;
  report.lp_status = "feasible";
  report.opt_lower_bound = search.infeasible / 2;
  report.lp_solves = search.solves;
  report.assignment = randomized_round(search.solution, rng);
  std::fill(report.assignment.configs.begin(), report.assignment.configs.end(), 0);
  ConfigInstance routed = routed_config_instance(graph, report.assignment.paths);
  fill_assignment_loads(routed, TruncationThreshold(report.tau), report);
  return report;
}

AdaptivePolicy group_list_policy(const ConfigInstance& config, const SmoothedGroups& groups,
                                 std::vector<std::size_t> job_group) {
  return [config, groups, job_group = std::move(job_group)](
             const std::vector<HistoryRecord>& history) -> std::optional<Decision> {
    std::size_t j = history.size();
    if (j >= config.requests.size()) return std::nullopt;
    auto load = loads_exact(config, history);
    const auto& machines = groups.groups[job_group[j]].machines;
    std::size_t best = machines.front();
    for (std::size_t i : machines) {
      if (load[i] < load[best] || (load[i] == load[best] && i < best)) best = i;
    }
    return Decision{j, best};
  };
}

RelatedOffline offline_related(const RelatedInstance& instance, CounterRng& rng, double eps) {
  validate(instance);
  RelatedOffline out;
  out.smoothing = smooth_machines(instance);
  out.config = related_to_config(out.smoothing.instance);
  out.report = offline_config_balancing(out.config, rng, eps);
  for (std::size_t machine : out.report.assignment.configs) out.job_group.push_back(out.smoothing.groups.group_of(machine));
  out.policy = group_list_policy(out.config, out.smoothing.groups, out.job_group);
  return out;
}

std::string list_scheduling_violation(const ConfigInstance& config, const SmoothedGroups& groups,
                                      const std::vector<std::size_t>& job_group,
                                      const std::vector<HistoryRecord>& history, const Rational& tau) {
  auto load = loads_exact(config, history);
  for (std::size_t k = 0; k < groups.groups.size(); ++k) {
    const auto& group = groups.groups[k];
    Rational total = 0, biggest = 0, trunc = 0, exceptional = 0;
    for (const auto& record : history) {
      if (job_group[record.request] != k) continue;
      Rational x = realized_max(config, record);  // X_j / s_k
      total += x;
      biggest = std::max(biggest, x);
      (x >= tau ? exceptional : trunc) += x;
    }
    const Rational count(static_cast<unsigned long>(group.count()));
    Rational graham = total / count + biggest;
    Rational derived = trunc / count + tau + 2 * exceptional;
    for (std::size_t i : group.machines) {
      if (load[i] > graham) {
        return "machine " + std::to_string(i) + " load " + to_string(load[i]) + " exceeds list-scheduling bound " +
               to_string(graham);
      }
      if (load[i] > derived) {
        return "machine " + std::to_string(i) + " load " + to_string(load[i]) + " exceeds truncated bound " +
               to_string(derived);
      }
    }
  }
  return "";
}

}  // namespace cbal

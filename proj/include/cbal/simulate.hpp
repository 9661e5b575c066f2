#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cbal/instance.hpp"
#include "cbal/policy.hpp"

namespace cbal {

/// Pairwise (cascade) summation in fixed order.
double pairwise_sum(std::span<const double> values);

struct SampleSummary {
  double mean = 0.0;
  double stderr_ = 0.0;  // sample stdev / sqrt(n), 0 for a single sample
};
SampleSummary summarize(std::span<const double> samples);

struct SimulationReport {
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double mean_makespan = 0.0;
  double stderr_makespan = 0.0;
  std::vector<double> mean_loads;
  std::optional<double> tau;
  double mean_exceptional = 0.0;  // realized sum_j max_i X^E_ij(c_j), 0 without tau
};

/// Request j's scalar in trial t is drawn from its own stream (seed, t, j), so
/// realizations do not depend on the order in which the policy commits.
SimulationReport simulate_policy(const ConfigInstance& instance, const AdaptivePolicy& policy, std::size_t trials,
                                 std::uint64_t seed, std::optional<double> tau = std::nullopt);

/// One realized run of the policy (exposed for pathwise checks).
std::vector<HistoryRecord> simulate_once(const ConfigInstance& instance, const AdaptivePolicy& policy,
                                         std::uint64_t seed, std::uint64_t trial);

}  // namespace cbal

#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cbal/distribution.hpp"

namespace cbal {

/// Raised when a routing request has no admissible source-sink path.
class NoFeasiblePath : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Scaled-scalar configuration: resource i receives multipliers[i] * X with X ~ law.
struct Configuration {
  std::vector<Rational> multipliers;
  DiscreteDistribution law;

  Rational max_multiplier() const;
  bool operator==(const Configuration&) const = default;
};

struct Request {
  std::size_t id = 0;
  std::vector<Configuration> configs;

  bool operator==(const Request&) const = default;
};

struct ConfigInstance {
  std::size_t m = 1;
  std::vector<Request> requests;

  bool operator==(const ConfigInstance&) const = default;
};

/// X_ij = X_j / s_i.
struct RelatedInstance {
  std::vector<Rational> speeds;
  std::vector<DiscreteDistribution> jobs;

  std::size_t machine_count() const { return speeds.size(); }
  bool operator==(const RelatedInstance&) const = default;
};

/// jobs[j][i] is the law of job j on machine i; only the chosen machine's law is realized.
struct UnrelatedInstance {
  std::size_t m = 1;
  std::vector<std::vector<DiscreteDistribution>> jobs;

  bool operator==(const UnrelatedInstance&) const = default;
};

struct Edge {
  std::size_t tail = 0;
  std::size_t head = 0;
  Rational capacity;

  bool operator==(const Edge&) const = default;
};

struct RoutingRequest {
  std::size_t source = 0;
  std::size_t sink = 0;
  DiscreteDistribution demand;

  bool operator==(const RoutingRequest&) const = default;
};

/// Directed graph with capacities; a demand X on edge e loads X / capacity(e).
struct RoutingInstance {
  std::size_t vertices = 0;
  std::vector<Edge> edges;
  std::vector<RoutingRequest> requests;

  bool operator==(const RoutingInstance&) const = default;
};

using Instance = std::variant<ConfigInstance, UnrelatedInstance, RelatedInstance, RoutingInstance>;

std::string instance_kind(const Instance& instance);

void validate(const ConfigInstance& instance);
void validate(const RelatedInstance& instance);
void validate(const UnrelatedInstance& instance);
/// Also checks that every request can reach its sink in the full graph.
void validate(const RoutingInstance& instance);
void validate(const Instance& instance);

// Moments of a scaled-scalar configuration.

/// E[max_i X_i(c)].
Rational expected_max_exact(const Configuration& config);
/// E[max_i X_i^E(c)] at threshold tau.
Rational exceptional_max_mean_exact(const Configuration& config, const Rational& tau);
/// E[X_i^T(c)] at threshold tau.
Rational truncated_resource_mean_exact(const Configuration& config, std::size_t resource, const Rational& tau);

/// Deterministic proxy vector of length m + 1: entry 0 holds the expected
/// exceptional maximum, entries 1..m the expected truncated loads.
std::vector<Rational> proxy_vector_exact(const Configuration& config, const Rational& tau);
std::vector<double> proxy_vector(const Configuration& config, const TruncationThreshold& tau);

}  // namespace cbal

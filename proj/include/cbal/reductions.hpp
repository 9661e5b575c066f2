#pragma once

#include <cstddef>
#include <vector>

#include "cbal/graph.hpp"
#include "cbal/instance.hpp"

namespace cbal {

/// Job j gets m configurations; configuration c loads only machine c with law X_cj.
ConfigInstance unrelated_to_config(const UnrelatedInstance& instance);

/// X_ij = X_j / s_i.
UnrelatedInstance related_to_unrelated(const RelatedInstance& instance);

inline ConfigInstance related_to_config(const RelatedInstance& instance) {
  return unrelated_to_config(related_to_unrelated(instance));
}

/// Implicit configuration view of one routing request: configurations are the
/// simple source-sink paths over the admissible edges E_j = {e : E[X_ej] <= tau}.
struct RoutingRequestView {
  std::size_t request = 0;
  std::vector<bool> admissible;

  std::vector<Path> enumerate_paths(const RoutingInstance& graph) const;
};

/// Builds per-request admissible edge sets. Throws NoFeasiblePath when E_j
/// disconnects some request's source from its sink.
std::vector<RoutingRequestView> routing_to_config(const RoutingInstance& graph, const TruncationThreshold& tau);

/// E_j as a mask; does not check connectivity.
std::vector<bool> admissible_edges(const RoutingInstance& graph, std::size_t request, const Rational& tau);

/// Configuration of request j routed along path: multiplier 1/c_e on path edges.
Configuration path_configuration(const RoutingInstance& graph, std::size_t request, const Path& path);

/// Smallest capacity along the path.
Rational bottleneck_capacity(const RoutingInstance& graph, const Path& path);

/// Materializes a fixed choice of paths as a configuration instance with one
/// configuration per request (used for evaluation and simulation).
ConfigInstance routed_config_instance(const RoutingInstance& graph, const std::vector<Path>& paths);

}  // namespace cbal

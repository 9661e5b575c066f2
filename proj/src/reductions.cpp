#include "cbal/reductions.hpp"

#include <algorithm>

namespace cbal {

ConfigInstance unrelated_to_config(const UnrelatedInstance& instance) {
  ConfigInstance out;
  out.m = instance.m;
  out.requests.reserve(instance.jobs.size());
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    Request request;
    request.id = j;
    for (std::size_t c = 0; c < instance.m; ++c) {
      std::vector<Rational> multipliers(instance.m, Rational(0));
      multipliers[c] = 1;
      request.configs.push_back({std::move(multipliers), instance.jobs[j][c]});
    }
    out.requests.push_back(std::move(request));
  }
  return out;
}

UnrelatedInstance related_to_unrelated(const RelatedInstance& instance) {
  UnrelatedInstance out;
  out.m = instance.speeds.size();
  for (const auto& job : instance.jobs) {
    std::vector<DiscreteDistribution> laws;
    laws.reserve(out.m);
    for (const auto& speed : instance.speeds) {
      Rational factor = 1 / speed;
      laws.push_back(scale(job, factor));
    }
    out.jobs.push_back(std::move(laws));
  }
  return out;
}

std::vector<bool> admissible_edges(const RoutingInstance& graph, std::size_t request, const Rational& tau) {
  Rational demand_mean = mean_exact(graph.requests.at(request).demand);
  std::vector<bool> mask(graph.edges.size());
  for (std::size_t e = 0; e < graph.edges.size(); ++e) mask[e] = demand_mean / graph.edges[e].capacity <= tau;
  return mask;
}

std::vector<Path> RoutingRequestView::enumerate_paths(const RoutingInstance& graph) const {
  const auto& r = graph.requests.at(request);
  return enumerate_simple_paths(graph, admissible, r.source, r.sink);
}

std::vector<RoutingRequestView> routing_to_config(const RoutingInstance& graph, const TruncationThreshold& tau) {
  std::vector<RoutingRequestView> views;
  views.reserve(graph.requests.size());
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    RoutingRequestView view{j, admissible_edges(graph, j, tau.exact())};
    const auto& r = graph.requests[j];
    if (!reachable(graph, view.admissible, r.source, r.sink)) {
      throw NoFeasiblePath("request " + std::to_string(j) + " has no admissible path at tau = " +
                           to_string(tau.exact()));
    }
    views.push_back(std::move(view));
  }
  return views;
}

Rational bottleneck_capacity(const RoutingInstance& graph, const Path& path) {
  Rational best = graph.edges.at(path.edges.front()).capacity;
  for (std::size_t e : path.edges) best = std::min(best, graph.edges[e].capacity);
  return best;
}

Configuration path_configuration(const RoutingInstance& graph, std::size_t request, const Path& path) {
  std::vector<Rational> multipliers(graph.edges.size(), Rational(0));
  for (std::size_t e : path.edges) multipliers[e] = 1 / graph.edges[e].capacity;
  return {std::move(multipliers), graph.requests.at(request).demand};
}

ConfigInstance routed_config_instance(const RoutingInstance& graph, const std::vector<Path>& paths) {
  ConfigInstance out;
  out.m = graph.edges.size();
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    out.requests.push_back({j, {path_configuration(graph, j, paths.at(j))}});
  }
  return out;
}

}  // namespace cbal

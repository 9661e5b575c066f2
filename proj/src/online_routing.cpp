#include <cmath>
#include <set>

#include "cbal/online.hpp"
#include "cbal/path_lp.hpp"
#include "cbal/reductions.hpp"

namespace cbal {

namespace {

double truncated_edge_mean(const DiscreteDistribution& demand, const Rational& capacity, const Rational& tau) {
  return to_double(truncated_mean_exact(demand, tau * capacity) / capacity);
}

double exceptional_edge_mean(const DiscreteDistribution& demand, const Rational& capacity, const Rational& tau) {
  return to_double(exceptional_mean_exact(demand, tau * capacity) / capacity);
}

}  // namespace

double route_increase(const RoutingInstance& graph, const PotentialState& state, std::size_t request,
                      const Path& path, std::vector<double>* proxy) {
  const auto& demand = graph.requests[request].demand;
  const Rational tau = TruncationThreshold(state.tau).exact();
  std::vector<double> x(graph.edges.size() + 1, 0.0);
  x[0] = exceptional_edge_mean(demand, bottleneck_capacity(graph, path), tau);
  for (std::size_t e : path.edges) x[e + 1] = truncated_edge_mean(demand, graph.edges[e].capacity, tau);
  double delta = potential_increase(state.load, x, state.tau);
  if (proxy) *proxy = std::move(x);
  return delta;
}

StepResult online_route_step(const RoutingInstance& graph, PotentialState& state, std::size_t request) {
  const auto& req = graph.requests[request];
  const Rational tau = TruncationThreshold(state.tau).exact();
  const std::vector<bool> admissible = admissible_edges(graph, request, tau);
  std::vector<double> weights(graph.edges.size(), 0.0);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (!admissible[e]) continue;
    double l = state.load[e + 1];
    double t = truncated_edge_mean(req.demand, graph.edges[e].capacity, tau);
    weights[e] = std::pow(1.5, (l + t) / state.tau) - std::pow(1.5, l / state.tau);
  }

  StepResult result;
  bool found = false;
  std::set<Rational> tried;
  for (std::size_t guess = 0; guess < graph.edges.size(); ++guess) {
    if (!admissible[guess]) continue;
    const Rational& width = graph.edges[guess].capacity;
    if (!tried.insert(width).second) continue;
    std::vector<bool> allowed(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) allowed[e] = admissible[e] && graph.edges[e].capacity >= width;
    auto path = shortest_path(graph, allowed, weights, req.source, req.sink);
    if (!path) continue;
    std::vector<double> proxy;
    double delta = route_increase(graph, state, request, *path, &proxy);
    if (!found || delta < result.delta_phi || (delta == result.delta_phi && path_less(*path, result.path))) {
      result.delta_phi = delta;
      result.path = std::move(*path);
      result.proxy = std::move(proxy);
      found = true;
    }
  }
  if (!found) {
    result.failed = true;
    return result;
  }
  const double cap = state.ell * state.tau;
  for (std::size_t i = 0; i < state.load.size(); ++i) {
    if (state.load[i] + result.proxy[i] > cap) {
      result.failed = true;
      return result;
    }
  }
  for (std::size_t i = 0; i < state.load.size(); ++i) state.load[i] += result.proxy[i];
  return result;
}

double routing_initial_lambda(const RoutingInstance& graph) {
  if (graph.requests.empty()) return 1.0;
  RoutingInstance first = graph;
  first.requests.erase(first.requests.begin() + 1, first.requests.end());
  double v = lpp_upper_bracket(first);
  return v > 0 ? v : 1.0;
}

OnlineRun online_routing(const RoutingInstance& graph) {
  validate(graph);
  return guess_and_double(graph.requests.size(), graph.edges.size(), routing_initial_lambda(graph),
                          [&](PotentialState& state, std::size_t j) { return online_route_step(graph, state, j); });
}

}  // namespace cbal

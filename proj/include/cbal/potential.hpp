#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cbal/graph.hpp"
#include "cbal/instance.hpp"

namespace cbal {

/// Entry 0 accumulates expected exceptional load, entries 1..m expected truncated loads.
using LoadVector = std::vector<double>;

/// sum_i (3/2)^(L_i / tau).
double potential(const LoadVector& load, double tau);

/// log_{3/2}(2m + 2) for m real resources.
double potential_capacity(std::size_t m);

struct PotentialState {
  LoadVector load;
  double lambda = 1.0;
  double tau = 2.0;  // always 2 lambda
  double ell = 0.0;

  /// Zero loads over m real resources plus the virtual one.
  static PotentialState fresh(std::size_t m, double lambda);
  std::size_t resources() const { return load.size() - 1; }
};

/// Change of the potential when proxy x is added to L.
double potential_increase(const LoadVector& load, const std::vector<double>& proxy, double tau);

struct StepResult {
  bool failed = false;
  std::size_t choice = 0;  // index among the offered proxies
  double delta_phi = 0.0;
  std::vector<double> proxy;
  Path path;  // routing only
};

/// Greedy step: pick the proxy with the smallest potential increase (lowest
/// index on ties). Commits it unless some entry of L + x would exceed ell tau,
/// in which case the result is marked failed and the state is untouched.
StepResult online_step(PotentialState& state, const std::vector<std::vector<double>>& proxies);

/// Proxies of a request's configurations at the state's tau, then online_step.
StepResult online_step(PotentialState& state, const Request& request);

struct OnlineTraceRecord {
  std::size_t request = 0;
  std::size_t phase = 0;
  double lambda = 0.0;
  StepResult step;
};

struct OnlineRun {
  std::vector<OnlineTraceRecord> trace;  // committed steps only, in arrival order
  std::vector<std::size_t> choices;      // per request
  std::vector<Path> paths;               // per request, routing only
  double initial_lambda = 0.0;
  double final_lambda = 0.0;
  std::size_t phases = 1;
  PotentialState final_state;
};

/// Runs step for requests 0..n-1. On a failed step lambda doubles, the load
/// vector restarts from zero (earlier choices stand) and the request is offered
/// again under the new phase.
using OnlineStepFn = std::function<StepResult(PotentialState&, std::size_t request)>;
OnlineRun guess_and_double(std::size_t requests, std::size_t resources, double initial_lambda,
                           const OnlineStepFn& step);

}  // namespace cbal

#include "cbal/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace cbal {

double potential(const LoadVector& load, double tau) {
  double sum = 0.0;
  for (double l : load) sum += std::pow(1.5, l / tau);
  return sum;
}

double potential_capacity(std::size_t m) { return std::log(2.0 * static_cast<double>(m) + 2.0) / std::log(1.5); }

PotentialState PotentialState::fresh(std::size_t m, double lambda) {
  PotentialState state;
  state.load.assign(m + 1, 0.0);
  state.lambda = lambda;
  state.tau = 2.0 * lambda;
  state.ell = potential_capacity(m);
  return state;
}

double potential_increase(const LoadVector& load, const std::vector<double>& proxy, double tau) {
  double delta = 0.0;
  for (std::size_t i = 0; i < load.size(); ++i) {
    if (proxy[i] == 0.0) continue;
    delta += std::pow(1.5, (load[i] + proxy[i]) / tau) - std::pow(1.5, load[i] / tau);
  }
  return delta;
}

StepResult online_step(PotentialState& state, const std::vector<std::vector<double>>& proxies) {
  if (proxies.empty()) throw std::invalid_argument("online_step needs at least one configuration");
  StepResult result;
  for (std::size_t c = 0; c < proxies.size(); ++c) {
    double delta = potential_increase(state.load, proxies[c], state.tau);
    if (c == 0 || delta < result.delta_phi) {
      result.choice = c;
      result.delta_phi = delta;
    }
  }
  result.proxy = proxies[result.choice];
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

StepResult online_step(PotentialState& state, const Request& request) {
  TruncationThreshold tau(state.tau);
  std::vector<std::vector<double>> proxies;
  for (const auto& config : request.configs) proxies.push_back(proxy_vector(config, tau));
  return online_step(state, proxies);
}

OnlineRun guess_and_double(std::size_t requests, std::size_t resources, double initial_lambda,
                           const OnlineStepFn& step) {
  if (!(initial_lambda > 0.0)) throw std::invalid_argument("initial lambda must be positive");
  OnlineRun run;
  run.initial_lambda = initial_lambda;
  PotentialState state = PotentialState::fresh(resources, initial_lambda);
  std::size_t phase = 0;
  for (std::size_t j = 0; j < requests; ++j) {
    while (true) {
      StepResult result = step(state, j);
      if (!result.failed) {
        run.choices.push_back(result.choice);
        run.paths.push_back(result.path);
        run.trace.push_back({j, phase, state.lambda, std::move(result)});
        break;
      }
      if (state.lambda > 1e300) throw std::runtime_error("guess-and-double diverged");
      ++phase;
      state = PotentialState::fresh(resources, 2.0 * state.lambda);
    }
  }
  run.phases = phase + 1;
  run.final_lambda = state.lambda;
  run.final_state = std::move(state);
  return run;
}

}  // namespace cbal

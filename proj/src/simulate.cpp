#include "cbal/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbal {

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

SampleSummary summarize(std::span<const double> samples) {
  SampleSummary out;
  if (samples.empty()) return out;
  const double n = static_cast<double>(samples.size());
  out.mean = pairwise_sum(samples) / n;
  if (samples.size() < 2) return out;
  std::vector<double> sq(samples.size());
  for (std::size_t k = 0; k < samples.size(); ++k) sq[k] = (samples[k] - out.mean) * (samples[k] - out.mean);
  out.stderr_ = std::sqrt(pairwise_sum(sq) / (n - 1.0)) / std::sqrt(n);
  return out;
}

std::vector<HistoryRecord> simulate_once(const ConfigInstance& instance, const AdaptivePolicy& policy,
                                         std::uint64_t seed, std::uint64_t trial) {
  std::vector<HistoryRecord> history;
  while (history.size() < instance.requests.size()) {
    auto decision = policy(history);
    if (!decision) throw IncompletePolicy("policy stopped before every request was committed");
    const auto& law = instance.requests.at(decision->request).configs.at(decision->config).law;
    CounterRng rng(seed, derive_stream(StreamDomain::kSimulation, trial, decision->request));
    history.push_back({decision->request, decision->config, sample_index(law, rng)});
  }
  return history;
}

SimulationReport simulate_policy(const ConfigInstance& instance, const AdaptivePolicy& policy, std::size_t trials,
                                 std::uint64_t seed, std::optional<double> tau) {
  if (trials < 1) throw std::invalid_argument("simulation needs at least one trial");
  SimulationReport report;
  report.trials = trials;
  report.seed = seed;
  report.tau = tau;
  std::vector<double> makespans(trials);
  std::vector<double> exceptional(trials, 0.0);
  std::vector<std::vector<double>> per_load(instance.m, std::vector<double>(trials));
  for (std::size_t t = 0; t < trials; ++t) {
    auto history = simulate_once(instance, policy, seed, t);
    auto load = loads(instance, history);
    makespans[t] = load.empty() ? 0.0 : *std::max_element(load.begin(), load.end());
    for (std::size_t i = 0; i < instance.m; ++i) per_load[i][t] = load[i];
    if (tau) {
      for (const auto& record : history) exceptional[t] += exceptional_part(to_double(realized_max(instance, record)), *tau);
    }
  }
  SampleSummary s = summarize(makespans);
  report.mean_makespan = s.mean;
  report.stderr_makespan = s.stderr_;
  for (const auto& column : per_load) report.mean_loads.push_back(summarize(column).mean);
  report.mean_exceptional = summarize(exceptional).mean;
  return report;
}

}  // namespace cbal

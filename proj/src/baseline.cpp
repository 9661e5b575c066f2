#include "cbal/baseline.hpp"

#include <algorithm>
#include <stdexcept>

#include "cbal/reductions.hpp"

namespace cbal {

SqrtListScheduler::SqrtListScheduler(std::vector<Rational> speeds) : speeds_(std::move(speeds)) {
  if (speeds_.empty()) throw std::invalid_argument("scheduler needs at least one machine");
  Rational fastest = *std::max_element(speeds_.begin(), speeds_.end());
  const Rational m(static_cast<unsigned long>(speeds_.size()));
  for (std::size_t i = 0; i < speeds_.size(); ++i) {
    if (speeds_[i] * speeds_[i] * m >= fastest * fastest) eligible_.push_back(i);
  }
}

std::size_t SqrtListScheduler::choose(const std::vector<Rational>& realized_loads) const {
  std::size_t best = eligible_.front();
  for (std::size_t i : eligible_) {
    if (realized_loads[i] < realized_loads[best]) best = i;
  }
  return best;
}

ScheduleTrace nonclairvoyant_sqrt_list(const RelatedInstance& instance, const std::vector<Rational>& sizes) {
  SqrtListScheduler scheduler(instance.speeds);
  ScheduleTrace trace;
  trace.loads.assign(instance.speeds.size(), Rational(0));
  for (const auto& size : sizes) {
    std::size_t i = scheduler.choose(trace.loads);
    trace.machines.push_back(i);
    trace.loads[i] += size / instance.speeds[i];
  }
  trace.makespan = 0;
  for (const auto& l : trace.loads) trace.makespan = std::max(trace.makespan, l);
  return trace;
}

AdaptivePolicy sqrt_list_policy(const RelatedInstance& instance) {
  ConfigInstance config = related_to_config(instance);
  SqrtListScheduler scheduler(instance.speeds);
  return [config = std::move(config), scheduler](const std::vector<HistoryRecord>& history) -> std::optional<Decision> {
    std::size_t j = history.size();
    if (j >= config.requests.size()) return std::nullopt;
    return Decision{j, scheduler.choose(loads_exact(config, history))};
  };
}

}  // namespace cbal

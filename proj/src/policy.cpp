#include "cbal/policy.hpp"

#include <algorithm>

#include "json.hpp"

namespace cbal {

Rational realized_value(const ConfigInstance& instance, const HistoryRecord& record) {
  return instance.requests.at(record.request).configs.at(record.config).law.atoms()[record.atom].value;
}

Rational realized_max(const ConfigInstance& instance, const HistoryRecord& record) {
  const auto& config = instance.requests.at(record.request).configs.at(record.config);
  return config.max_multiplier() * config.law.atoms()[record.atom].value;
}

std::vector<Rational> loads_exact(const ConfigInstance& instance, const std::vector<HistoryRecord>& history) {
  std::vector<Rational> load(instance.m, Rational(0));
  for (const auto& record : history) {
    const auto& config = instance.requests[record.request].configs[record.config];
    const Rational& x = config.law.atoms()[record.atom].value;
    for (std::size_t i = 0; i < instance.m; ++i) {
      if (config.multipliers[i] != 0) load[i] += config.multipliers[i] * x;
    }
  }
  return load;
}

std::vector<double> loads(const ConfigInstance& instance, const std::vector<HistoryRecord>& history) {
  std::vector<double> load(instance.m, 0.0);
  for (const auto& record : history) {
    const auto& config = instance.requests[record.request].configs[record.config];
    double x = config.law.values()[record.atom];
    for (std::size_t i = 0; i < instance.m; ++i) load[i] += to_double(config.multipliers[i]) * x;
  }
  return load;
}

std::uint32_t remaining_mask(const ConfigInstance& instance, const std::vector<HistoryRecord>& history) {
  std::uint32_t mask = instance.requests.size() >= 32 ? ~0u : (1u << instance.requests.size()) - 1;
  for (const auto& record : history) mask &= ~(1u << record.request);
  return mask;
}

AdaptivePolicy fixed_assignment_policy(std::vector<std::size_t> configs) {
  return [configs = std::move(configs)](const std::vector<HistoryRecord>& history) -> std::optional<Decision> {
    if (history.size() >= configs.size()) return std::nullopt;
    return Decision{history.size(), configs[history.size()]};
  };
}

namespace {

void check_decision(const ConfigInstance& instance, const std::vector<HistoryRecord>& history,
                    const std::optional<Decision>& decision) {
  if (!decision) throw IncompletePolicy("policy left a reachable state undecided after " +
                                        std::to_string(history.size()) + " commitments");
  if (decision->request >= instance.requests.size() ||
      decision->config >= instance.requests[decision->request].configs.size()) {
    throw IncompletePolicy("policy chose a nonexistent request or configuration");
  }
  for (const auto& record : history) {
    if (record.request == decision->request) throw IncompletePolicy("policy chose an already committed request");
  }
}

struct Evaluator {
  const ConfigInstance& instance;
  const AdaptivePolicy& policy;
  const Rational& tau;
  const DecisionObserver& observer;
  std::vector<HistoryRecord> history;
  std::vector<Rational> load;

  // Returns (E[makespan], E[exceptional]) conditioned on the current history.
  PolicyValue walk(const Rational& reach) {
    if (history.size() == instance.requests.size()) {
      Rational makespan = 0;
      for (const auto& l : load) makespan = std::max(makespan, l);
      return {makespan, Rational(0)};
    }
    auto decision = policy(history);
    check_decision(instance, history, decision);
    if (observer) observer(history, *decision, reach);
    const auto& config = instance.requests[decision->request].configs[decision->config];
    Rational amax = config.max_multiplier();
    PolicyValue total{0, 0};
    for (std::size_t k = 0; k < config.law.size(); ++k) {
      const auto& atom = config.law.atoms()[k];
      for (std::size_t i = 0; i < instance.m; ++i) load[i] += config.multipliers[i] * atom.value;
      history.push_back({decision->request, decision->config, k});
      PolicyValue below = walk(reach * atom.prob);
      history.pop_back();
      for (std::size_t i = 0; i < instance.m; ++i) load[i] -= config.multipliers[i] * atom.value;
      total.makespan += atom.prob * below.makespan;
      total.exceptional += atom.prob * (below.exceptional + exceptional_part(amax * atom.value, tau));
    }
    return total;
  }
};

nlohmann::ordered_json tree_node(const ConfigInstance& instance, const AdaptivePolicy& policy,
                                 std::vector<HistoryRecord>& history) {
  nlohmann::ordered_json node;
  std::uint32_t mask = remaining_mask(instance, history);
  nlohmann::ordered_json remaining = nlohmann::ordered_json::array();
  for (std::size_t j = 0; j < instance.requests.size(); ++j) {
    if (mask & (1u << j)) remaining.push_back(j);
  }
  node["remaining"] = remaining;
  nlohmann::ordered_json load = nlohmann::ordered_json::array();
  for (const auto& l : loads_exact(instance, history)) load.push_back(to_string(l));
  node["loads"] = load;
  if (history.size() == instance.requests.size()) return node;
  auto decision = policy(history);
  check_decision(instance, history, decision);
  node["decision"] = {{"request", decision->request}, {"config", decision->config}};
  nlohmann::ordered_json children = nlohmann::ordered_json::array();
  const auto& law = instance.requests[decision->request].configs[decision->config].law;
  for (std::size_t k = 0; k < law.size(); ++k) {
    history.push_back({decision->request, decision->config, k});
    nlohmann::ordered_json child;
    child["value"] = to_string(law.atoms()[k].value);
    child["prob"] = to_string(law.atoms()[k].prob);
    child["node"] = tree_node(instance, policy, history);
    children.push_back(std::move(child));
    history.pop_back();
  }
  node["children"] = children;
  return node;
}

}  // namespace

PolicyValue evaluate_policy(const ConfigInstance& instance, const AdaptivePolicy& policy, const Rational& tau,
                            const DecisionObserver& observer) {
  Evaluator evaluator{instance, policy, tau, observer, {}, std::vector<Rational>(instance.m, Rational(0))};
  return evaluator.walk(Rational(1));
}

std::string policy_tree_json(const ConfigInstance& instance, const AdaptivePolicy& policy) {
  std::vector<HistoryRecord> history;
  return tree_node(instance, policy, history).dump(2) + "\n";
}

}  // namespace cbal

#include "cbal/oracle.hpp"

#include <algorithm>
#include <string>

namespace cbal {

StateSpaceExceeded::StateSpaceExceeded(std::size_t states, std::size_t limit)
    : std::runtime_error("oracle state space exceeded: " + std::to_string(states) + " states (limit " +
                         std::to_string(limit) + ")"),
      states_(states) {}

AdaptiveOracle::AdaptiveOracle(ConfigInstance instance, std::size_t state_limit)
    : instance_(std::move(instance)), state_limit_(state_limit) {
  validate(instance_);
  if (instance_.requests.size() > 31) throw StateSpaceExceeded(instance_.requests.size(), 31);
}

std::uint32_t AdaptiveOracle::full_mask() const { return (1u << instance_.requests.size()) - 1; }

const AdaptiveOracle::Entry& AdaptiveOracle::solve(std::uint32_t remaining, const std::vector<Rational>& loads) {
  auto key = std::make_pair(remaining, loads);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  if (memo_.size() >= state_limit_) throw StateSpaceExceeded(memo_.size() + 1, state_limit_);

  Entry entry;
  if (remaining == 0) {
    entry.value = 0;
    for (const auto& l : loads) entry.value = std::max(entry.value, l);
  } else {
    bool have = false;
    std::vector<Rational> next(loads);
    for (std::size_t j = 0; j < instance_.requests.size(); ++j) {
      if (!(remaining & (1u << j))) continue;
      const auto& request = instance_.requests[j];
      for (std::size_t c = 0; c < request.configs.size(); ++c) {
        const auto& config = request.configs[c];
        Rational expected = 0;
        for (const auto& atom : config.law.atoms()) {
          for (std::size_t i = 0; i < instance_.m; ++i) next[i] = loads[i] + config.multipliers[i] * atom.value;
          expected += atom.prob * solve(remaining & ~(1u << j), next).value;
        }
        if (!have || expected < entry.value) {
          entry.value = expected;
          entry.decision = Decision{j, c};
          have = true;
        }
      }
    }
  }
  return memo_.emplace(std::move(key), std::move(entry)).first->second;
}

AdaptivePolicy AdaptiveOracle::policy() {
  return [this](const std::vector<HistoryRecord>& history) -> std::optional<Decision> {
    return solve(remaining_mask(instance_, history), loads_exact(instance_, history)).decision;
  };
}

OracleResult optimal_adaptive(const ConfigInstance& instance, const Rational& tau) {
  AdaptiveOracle oracle(instance);
  OracleResult result;
  result.value = evaluate_policy(oracle.instance(), oracle.policy(), tau);
  result.states = oracle.states();
  return result;
}

Rational optimal_adaptive_value(const ConfigInstance& instance) {
  AdaptiveOracle oracle(instance);
  return oracle.value();
}

namespace {

struct PhaseState {
  std::vector<Rational> loads;
  std::size_t restarts = 0;
};

// Decision of the current phase at (remaining, phase loads); restarts the
// phase when that decision is too large in expectation.
Decision phase_decision(AdaptiveOracle& oracle, std::uint32_t remaining, PhaseState& phase, const Rational& tau) {
  const auto& instance = oracle.instance();
  auto pick = *oracle.solve(remaining, phase.loads).decision;
  if (expected_max_exact(instance.requests[pick.request].configs[pick.config]) <= tau) return pick;
  phase.loads = oracle.zero_loads();
  ++phase.restarts;
  pick = *oracle.solve(remaining, phase.loads).decision;
  if (expected_max_exact(instance.requests[pick.request].configs[pick.config]) > tau) {
    throw std::logic_error("a fresh phase commits a configuration with E[max X] > tau; tau is below 2 E[OPT]");
  }
  return pick;
}

// Replays the history through the phase logic and returns the state before
// the next decision.
PhaseState replay(AdaptiveOracle& oracle, const std::vector<HistoryRecord>& history, const Rational& tau) {
  const auto& instance = oracle.instance();
  PhaseState phase{oracle.zero_loads(), 0};
  std::uint32_t remaining = oracle.full_mask();
  for (const auto& record : history) {
    Decision expected = phase_decision(oracle, remaining, phase, tau);
    if (expected.request != record.request || expected.config != record.config) {
      throw std::logic_error("history does not follow the restart policy");
    }
    const auto& config = instance.requests[record.request].configs[record.config];
    const Rational& x = config.law.atoms()[record.atom].value;
    for (std::size_t i = 0; i < instance.m; ++i) phase.loads[i] += config.multipliers[i] * x;
    remaining &= ~(1u << record.request);
    if (config.max_multiplier() * x >= tau) {
      phase.loads = oracle.zero_loads();
      ++phase.restarts;
    }
  }
  return phase;
}

}  // namespace

AdaptivePolicy restart_policy(std::shared_ptr<AdaptiveOracle> oracle, const Rational& tau) {
  return [oracle, tau](const std::vector<HistoryRecord>& history) -> std::optional<Decision> {
    std::uint32_t remaining = remaining_mask(oracle->instance(), history);
    if (remaining == 0) return std::nullopt;
    PhaseState phase = replay(*oracle, history, tau);
    return phase_decision(*oracle, remaining, phase, tau);
  };
}

RestartResult evaluate_restart_policy(const ConfigInstance& instance, const Rational& tau) {
  auto oracle = std::make_shared<AdaptiveOracle>(instance);
  RestartResult result;
  result.max_committed_expected_max = 0;
  result.expected_restarts = 0;
  auto policy = restart_policy(oracle, tau);
  result.value = evaluate_policy(
      instance, policy, tau,
      [&](const std::vector<HistoryRecord>&, const Decision& d, const Rational&) {
        result.max_committed_expected_max = std::max(
            result.max_committed_expected_max, expected_max_exact(instance.requests[d.request].configs[d.config]));
      });
  // Restarts are counted on complete paths: replay each leaf history.
  std::vector<HistoryRecord> history;
  std::function<void(const Rational&)> walk = [&](const Rational& reach) {
    auto d = policy(history);
    if (!d) {
      PhaseState phase = replay(*oracle, history, tau);
      result.expected_restarts += reach * Rational(static_cast<unsigned long>(phase.restarts));
      return;
    }
    const auto& law = instance.requests[d->request].configs[d->config].law;
    for (std::size_t k = 0; k < law.size(); ++k) {
      history.push_back({d->request, d->config, k});
      walk(reach * law.atoms()[k].prob);
      history.pop_back();
    }
  };
  walk(Rational(1));
  return result;
}

AdaptivePolicy adaptivity_gap_hand_policy(std::size_t m) {
  return [m](const std::vector<HistoryRecord>& history) -> std::optional<Decision> {
    if (history.empty()) return Decision{0, 0};
    if (history.size() >= m) return std::nullopt;
    const bool stochastic_was_zero = history.front().atom == 0;
    std::size_t next = history.size();
    return Decision{next, stochastic_was_zero ? 0 : next};
  };
}

}  // namespace cbal

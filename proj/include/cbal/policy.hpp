#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cbal/instance.hpp"

namespace cbal {

/// One committed request: configuration and the index of the realized atom of its law.
struct HistoryRecord {
  std::size_t request = 0;
  std::size_t config = 0;
  std::size_t atom = 0;

  bool operator==(const HistoryRecord&) const = default;
};

struct Decision {
  std::size_t request = 0;
  std::size_t config = 0;

  bool operator==(const Decision&) const = default;
};

/// Adaptive policy: next (request, config) given the realized history, or
/// nullopt when it has nothing to say. Non-adaptive policies ignore the atoms.
using AdaptivePolicy = std::function<std::optional<Decision>(const std::vector<HistoryRecord>&)>;

class IncompletePolicy : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exact expected makespan and expected total exceptional load sum_j max_i X^E_ij(c_j).
struct PolicyValue {
  Rational makespan;
  Rational exceptional;

  bool operator==(const PolicyValue&) const = default;
};

Rational realized_value(const ConfigInstance& instance, const HistoryRecord& record);
/// max_i a_i(c) x for the record's realization.
Rational realized_max(const ConfigInstance& instance, const HistoryRecord& record);

std::vector<Rational> loads_exact(const ConfigInstance& instance, const std::vector<HistoryRecord>& history);
std::vector<double> loads(const ConfigInstance& instance, const std::vector<HistoryRecord>& history);

/// Bitmask of requests not yet in the history.
std::uint32_t remaining_mask(const ConfigInstance& instance, const std::vector<HistoryRecord>& history);

/// Requests in index order with fixed configurations.
AdaptivePolicy fixed_assignment_policy(std::vector<std::size_t> configs);

/// Called for every reachable decision with the probability of reaching it.
using DecisionObserver =
    std::function<void(const std::vector<HistoryRecord>&, const Decision&, const Rational& reach_probability)>;

/// Exact expectation over every realization path. Throws IncompletePolicy when
/// a reachable state has no valid decision.
PolicyValue evaluate_policy(const ConfigInstance& instance, const AdaptivePolicy& policy, const Rational& tau,
                            const DecisionObserver& observer = {});

/// Nested JSON text {remaining, loads, decision, children:[{atom, value, prob, node}]}.
std::string policy_tree_json(const ConfigInstance& instance, const AdaptivePolicy& policy);

}  // namespace cbal

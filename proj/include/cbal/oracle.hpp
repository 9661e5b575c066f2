#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cbal/instance.hpp"
#include "cbal/policy.hpp"

namespace cbal {

class StateSpaceExceeded : public std::runtime_error {
 public:
  StateSpaceExceeded(std::size_t states, std::size_t limit);
  std::size_t states() const { return states_; }

 private:
  std::size_t states_;
};

/// Exact dynamic program over (remaining requests, realized loads):
///   V(empty, L) = max_i L_i
///   V(S, L) = min over j in S and configs c of E_x V(S - j, L + a(c) x).
/// Ties go to the lowest (request, config). The memo is shared by every query,
/// so sub-instances (subsets of requests, any start loads) reuse work.
class AdaptiveOracle {
 public:
  explicit AdaptiveOracle(ConfigInstance instance, std::size_t state_limit = 2000000);

  struct Entry {
    Rational value;
    std::optional<Decision> decision;  // empty when nothing remains
  };

  const Entry& solve(std::uint32_t remaining, const std::vector<Rational>& loads);
  Rational value() { return solve(full_mask(), zero_loads()).value; }

  /// The optimal policy; decisions are looked up lazily from the memo.
  AdaptivePolicy policy();

  const ConfigInstance& instance() const { return instance_; }
  std::uint32_t full_mask() const;
  std::vector<Rational> zero_loads() const { return std::vector<Rational>(instance_.m, Rational(0)); }
  std::size_t states() const { return memo_.size(); }

 private:
  ConfigInstance instance_;
  std::size_t state_limit_;
  std::map<std::pair<std::uint32_t, std::vector<Rational>>, Entry> memo_;
};

struct OracleResult {
  PolicyValue value;  // exceptional load evaluated at the requested tau
  std::size_t states = 0;
};

/// E[OPT] and the exceptional load of the optimal policy at tau.
OracleResult optimal_adaptive(const ConfigInstance& instance, const Rational& tau);
Rational optimal_adaptive_value(const ConfigInstance& instance);

struct RestartResult {
  PolicyValue value;
  /// Largest E[max_i X_i(c)] over configurations committed on some reachable path.
  Rational max_committed_expected_max;
  /// Probability-weighted number of restarts of either kind.
  Rational expected_restarts;
};

/// Policy S(J): follow the optimal policy of the current phase. Before
/// committing a configuration with E[max_i X_i(c)] > tau the phase restarts
/// on the same remaining set; after a commitment whose realized max_i X_i(c)
/// reaches tau the phase restarts on the rest. A new phase ignores earlier
/// loads when deciding. Throws std::logic_error if a fresh phase still wants
/// a too-large configuration (tau below the precondition).
AdaptivePolicy restart_policy(std::shared_ptr<AdaptiveOracle> oracle, const Rational& tau);
RestartResult evaluate_restart_policy(const ConfigInstance& instance, const Rational& tau);

/// The hand policy for the adaptivity-gap example (reduced to configurations):
/// the stochastic job goes to the fast machine; if it realizes to 0 all other
/// jobs follow it, otherwise job k goes to slow machine k.
AdaptivePolicy adaptivity_gap_hand_policy(std::size_t m);

}  // namespace cbal

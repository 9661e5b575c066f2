#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "cbal/instance.hpp"

namespace cbal {

/// Online scheduler under attack: picks a machine for job `job` before its
/// size is revealed, seeing only the realized loads so far.
using SchedulerHook =
    std::function<std::size_t(std::size_t job, const std::vector<Rational>& loads, const std::vector<Rational>& speeds)>;

struct AdversaryOutcome {
  RelatedInstance instance;         // the clairvoyance instance being played
  std::vector<Rational> sizes;      // realized sizes in arrival order
  std::vector<std::size_t> machines;
  std::vector<Rational> loads;
  Rational makespan;
  Rational clairvoyant_opt;         // 1 by construction
};

/// One fast machine and m-1 slow machines of speed 1/sqrt(m). Jobs are small
/// (1/sqrt(m)) until the scheduler first uses a slow machine; that job is the
/// big one (size 1). If the scheduler never does, the last job is big.
AdversaryOutcome clairvoyance_adversary(std::size_t m, const SchedulerHook& hook);

/// Always machine 0 (the fast one).
SchedulerHook always_fast_hook();
/// Nonclairvoyant sqrt(m) list scheduling.
SchedulerHook sqrt_list_hook();

}  // namespace cbal

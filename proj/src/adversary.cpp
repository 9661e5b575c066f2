#include "cbal/adversary.hpp"

#include <algorithm>

#include "cbal/baseline.hpp"
#include "cbal/generators.hpp"

namespace cbal {

AdversaryOutcome clairvoyance_adversary(std::size_t m, const SchedulerHook& hook) {
  AdversaryOutcome out;
  out.instance = gen_clairvoyance_adversary_instance(m);
  const auto& speeds = out.instance.speeds;
  // Job pool: the instance lists the big job first, small ones after.
  const Rational big = out.instance.jobs.front().atoms().front().value;
  const Rational small = m > 1 ? out.instance.jobs.back().atoms().front().value : big;
  out.loads.assign(m, Rational(0));
  bool big_used = false;
  for (std::size_t job = 0; job < m; ++job) {
    std::size_t machine = hook(job, out.loads, speeds);
    bool slow = machine != 0;
    bool last = job + 1 == m;
    Rational size = (!big_used && (slow || last)) ? big : small;
    if (size == big && !big_used) big_used = true;
    out.sizes.push_back(size);
    out.machines.push_back(machine);
    out.loads[machine] += size / speeds[machine];
  }
  out.makespan = *std::max_element(out.loads.begin(), out.loads.end());
  out.clairvoyant_opt = 1;
  return out;
}

SchedulerHook always_fast_hook() {
  return [](std::size_t, const std::vector<Rational>&, const std::vector<Rational>&) -> std::size_t { return 0; };
}

SchedulerHook sqrt_list_hook() {
  return [](std::size_t, const std::vector<Rational>& loads, const std::vector<Rational>& speeds) {
    return SqrtListScheduler(speeds).choose(loads);
  };
}

}  // namespace cbal

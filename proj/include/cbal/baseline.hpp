#pragma once

#include <cstddef>
#include <vector>

#include "cbal/instance.hpp"
#include "cbal/policy.hpp"

namespace cbal {

/// Nonclairvoyant list scheduling on the machines with s_i >= s_max / sqrt(m)
/// (checked exactly as s_i^2 m >= s_max^2). Each arriving job goes to the
/// eligible machine with the smallest realized load, lowest id on ties.
class SqrtListScheduler {
 public:
  explicit SqrtListScheduler(std::vector<Rational> speeds);

  std::size_t choose(const std::vector<Rational>& realized_loads) const;
  const std::vector<std::size_t>& eligible() const { return eligible_; }

 private:
  std::vector<Rational> speeds_;
  std::vector<std::size_t> eligible_;
};

struct ScheduleTrace {
  std::vector<std::size_t> machines;  // per job in arrival order
  std::vector<Rational> loads;        // final realized loads
  Rational makespan;
};

/// Runs the baseline on realized job sizes given in arrival order.
ScheduleTrace nonclairvoyant_sqrt_list(const RelatedInstance& instance, const std::vector<Rational>& sizes);

/// The same rule as an adaptive policy over related_to_config(instance).
AdaptivePolicy sqrt_list_policy(const RelatedInstance& instance);

}  // namespace cbal

#include "cbal/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cbal {

std::size_t SmoothedGroups::group_of(std::size_t machine) const {
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& ms = groups[k].machines;
    if (std::find(ms.begin(), ms.end(), machine) != ms.end()) return k;
  }
  throw std::out_of_range("machine " + std::to_string(machine) + " is not in any group");
}

std::size_t SmoothedGroups::machine_count() const {
  std::size_t total = 0;
  for (const auto& g : groups) total += g.count();
  return total;
}

SmoothingResult smooth_machines(const RelatedInstance& instance) {
  validate(instance);
  const std::size_t m = instance.speeds.size();
  const Rational fastest = *std::max_element(instance.speeds.begin(), instance.speeds.end());
  const Rational cutoff(1, static_cast<unsigned long>(m));

  // exponent t -> original machine ids with rounded speed 2^-t
  std::map<unsigned, std::vector<std::size_t>> by_exponent;
  for (std::size_t i = 0; i < m; ++i) {
    Rational normalized = instance.speeds[i] / fastest;
    if (normalized != 1 && normalized <= cutoff) continue;
    unsigned t = 0;
    Rational power = 1;
    while (power > normalized) {
      power /= 2;
      ++t;
    }
    by_exponent[t].push_back(i);
  }

  // Fastest first (t ascending); keep a group only if it is 3/2 times the
  // nearest faster survivor.
  std::vector<std::pair<unsigned, std::vector<std::size_t>>> kept;
  for (auto& [t, ids] : by_exponent) {
    if (!kept.empty() && 2 * ids.size() < 3 * kept.back().second.size()) continue;
    kept.emplace_back(t, std::move(ids));
  }
  std::reverse(kept.begin(), kept.end());

  SmoothingResult result;
  for (const auto& [t, ids] : kept) {
    SpeedGroup group;
    Rational speed = fastest;
    speed /= Rational(mpz_class(1) << t);
    group.speed = speed;
    for (std::size_t original : ids) {
      group.machines.push_back(result.instance.speeds.size());
      group.original_ids.push_back(original);
      result.instance.speeds.push_back(speed);
    }
    result.groups.groups.push_back(std::move(group));
  }
  result.instance.jobs = instance.jobs;
  return result;
}

std::string check_smoothed(const SmoothedGroups& smoothed, std::size_t original_machine_count) {
  const auto& groups = smoothed.groups;
  if (groups.empty()) return "no groups";
  std::size_t bound =
      static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(std::max<std::size_t>(original_machine_count, 1))))) + 1;
  if (groups.size() > bound) return "too many groups";
  const Rational& fastest = groups.back().speed;
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (groups[k].count() == 0) return "empty group";
    Rational ratio = fastest / groups[k].speed;
    if (ratio.get_den() != 1 || mpz_popcount(ratio.get_num().get_mpz_t()) != 1) return "speed is not fastest * 2^-t";
    if (k + 1 < groups.size()) {
      if (!(groups[k].speed < groups[k + 1].speed)) return "speeds not strictly increasing";
      if (2 * groups[k].count() < 3 * groups[k + 1].count()) return "group size ratio below 3/2";
    }
  }
  return {};
}

}  // namespace cbal

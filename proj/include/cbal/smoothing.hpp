#pragma once

#include <cstddef>
#include <vector>

#include "cbal/instance.hpp"

namespace cbal {

struct SpeedGroup {
  Rational speed;                         // fastest * 2^-t
  std::vector<std::size_t> machines;      // ids in the surviving instance
  std::vector<std::size_t> original_ids;  // ids in the input instance

  std::size_t count() const { return machines.size(); }
  bool operator==(const SpeedGroup&) const = default;
};

/// Groups ordered by strictly increasing speed, each at most 2/3 the size of
/// the next slower one.
struct SmoothedGroups {
  std::vector<SpeedGroup> groups;

  /// Group index of a machine of the surviving instance.
  std::size_t group_of(std::size_t machine) const;
  std::size_t machine_count() const;
};

struct SmoothingResult {
  SmoothedGroups groups;
  /// Surviving machines with smoothed speeds (original units), same jobs.
  RelatedInstance instance;
};

/// Machine smoothing: normalize speeds by the fastest, delete machines with
/// normalized speed <= 1/m (never the fastest), round the rest down to powers
/// of two, group equal speeds, then walk groups from fastest to slowest and
/// drop any group with fewer than 3/2 times the machines of the nearest faster
/// surviving group.
SmoothingResult smooth_machines(const RelatedInstance& instance);

/// Checks the structural properties; returns an empty string when they hold.
std::string check_smoothed(const SmoothedGroups& groups, std::size_t original_machine_count);

}  // namespace cbal

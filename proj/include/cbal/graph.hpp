#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cbal/instance.hpp"

namespace cbal {

/// Directed s-t path as edge ids plus the visited vertex sequence.
struct Path {
  std::vector<std::size_t> edges;
  std::vector<std::size_t> vertices;

  bool operator==(const Path&) const = default;
};

/// Vertex-sequence lexicographic order used for deterministic tie-breaks.
bool path_less(const Path& a, const Path& b);

/// Label-setting shortest path over the edges with allowed[e] set, using
/// nonnegative weights. Equal-distance labels keep the smaller predecessor
/// vertex id. Returns nullopt when target is unreachable.
std::optional<Path> shortest_path(const RoutingInstance& graph, const std::vector<bool>& allowed,
                                  std::span<const double> weights, std::size_t source, std::size_t target);

/// Every simple source-target path over the allowed edges, in DFS order of
/// increasing edge id.
std::vector<Path> enumerate_simple_paths(const RoutingInstance& graph, const std::vector<bool>& allowed,
                                         std::size_t source, std::size_t target);

/// Calls visit for each simple path; stop enumeration by returning false.
void for_each_simple_path(const RoutingInstance& graph, const std::vector<bool>& allowed, std::size_t source,
                          std::size_t target, const std::function<bool(const Path&)>& visit);

bool reachable(const RoutingInstance& graph, const std::vector<bool>& allowed, std::size_t source, std::size_t target);

}  // namespace cbal

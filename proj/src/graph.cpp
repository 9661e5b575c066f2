#include "cbal/graph.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace cbal {

bool path_less(const Path& a, const Path& b) {
  if (a.vertices != b.vertices) return a.vertices < b.vertices;
  return a.edges < b.edges;
}

std::optional<Path> shortest_path(const RoutingInstance& graph, const std::vector<bool>& allowed,
                                  std::span<const double> weights, std::size_t source, std::size_t target) {
  const std::size_t n = graph.vertices;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::vector<std::size_t>> out(n);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (allowed[e]) out[graph.edges[e].tail].push_back(e);
  }
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> pred_edge(n, kNone);
  std::vector<bool> done(n, false);
  std::set<std::pair<double, std::size_t>> queue;
  dist[source] = 0.0;
  queue.insert({0.0, source});
  while (!queue.empty()) {
    auto [d, v] = *queue.begin();
    queue.erase(queue.begin());
    if (done[v]) continue;
    done[v] = true;
    if (v == target) break;
    for (std::size_t e : out[v]) {
      std::size_t w = graph.edges[e].head;
      if (done[w]) continue;
      double candidate = d + weights[e];
      bool better = candidate < dist[w];
      if (!better && candidate == dist[w] && pred_edge[w] != kNone) {
        const auto& current = graph.edges[pred_edge[w]];
        better = v < current.tail || (v == current.tail && e < pred_edge[w]);
      }
      if (better) {
        if (dist[w] < kInf) queue.erase({dist[w], w});
        dist[w] = candidate;
        pred_edge[w] = e;
        queue.insert({candidate, w});
      }
    }
  }
  if (dist[target] == kInf) return std::nullopt;
  Path path;
  for (std::size_t v = target; v != source;) {
    std::size_t e = pred_edge[v];
    path.edges.push_back(e);
    path.vertices.push_back(v);
    v = graph.edges[e].tail;
  }
  path.vertices.push_back(source);
  std::reverse(path.edges.begin(), path.edges.end());
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

void for_each_simple_path(const RoutingInstance& graph, const std::vector<bool>& allowed, std::size_t source,
                          std::size_t target, const std::function<bool(const Path&)>& visit) {
  std::vector<std::vector<std::size_t>> out(graph.vertices);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (allowed[e]) out[graph.edges[e].tail].push_back(e);
  }
  std::vector<bool> on_path(graph.vertices, false);
  Path current;
  current.vertices.push_back(source);
  on_path[source] = true;
  bool keep_going = true;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (!keep_going) return;
    if (v == target) {
      keep_going = visit(current);
      return;
    }
    for (std::size_t e : out[v]) {
      std::size_t w = graph.edges[e].head;
      if (on_path[w]) continue;
      on_path[w] = true;
      current.edges.push_back(e);
      current.vertices.push_back(w);
      dfs(w);
      current.edges.pop_back();
      current.vertices.pop_back();
      on_path[w] = false;
      if (!keep_going) return;
    }
  };
  dfs(source);
}

std::vector<Path> enumerate_simple_paths(const RoutingInstance& graph, const std::vector<bool>& allowed,
                                         std::size_t source, std::size_t target) {
  std::vector<Path> paths;
  for_each_simple_path(graph, allowed, source, target, [&](const Path& p) {
    paths.push_back(p);
    return true;
  });
  return paths;
}

bool reachable(const RoutingInstance& graph, const std::vector<bool>& allowed, std::size_t source, std::size_t target) {
  std::vector<bool> seen(graph.vertices, false);
  std::vector<std::size_t> stack = {source};
  seen[source] = true;
  while (!stack.empty()) {
    std::size_t v = stack.back();
    stack.pop_back();
    if (v == target) return true;
    for (std::size_t e = 0; e < graph.edges.size(); ++e) {
      const auto& edge = graph.edges[e];
      if (allowed[e] && edge.tail == v && !seen[edge.head]) {
        seen[edge.head] = true;
        stack.push_back(edge.head);
      }
    }
  }
  return false;
}

}  // namespace cbal

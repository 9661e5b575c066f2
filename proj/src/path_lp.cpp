#include "cbal/path_lp.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cbal/reductions.hpp"
#include "cbal/simplex.hpp"

namespace cbal {

RoutingMoments::RoutingMoments(const RoutingInstance& g, const TruncationThreshold& t) : graph(g), tau(t) {
  truncated_.resize(g.requests.size());
  admissible_.resize(g.requests.size());
  for (std::size_t j = 0; j < g.requests.size(); ++j) {
    admissible_[j] = admissible_edges(g, j, tau.exact());
    for (const auto& edge : g.edges) {
      truncated_[j].push_back(to_double(truncated_mean_exact(g.requests[j].demand, tau.exact() * edge.capacity) /
                                        edge.capacity));
    }
  }
}

double RoutingMoments::exceptional(std::size_t request, const Rational& capacity) const {
  // (X/c)^E = X^E(tau c) / c.
  return to_double(exceptional_mean_exact(graph.requests[request].demand, tau.exact() * capacity) / capacity);
}

std::optional<std::pair<Path, double>> cheapest_dual_path(const RoutingMoments& moments, std::size_t request,
                                                          const std::vector<double>& b, double c) {
  const auto& graph = moments.graph;
  const auto& req = graph.requests[request];
  const auto& admissible = moments.admissible(request);
  std::vector<double> weights(graph.edges.size(), 0.0);
  for (std::size_t e = 0; e < graph.edges.size(); ++e) weights[e] = b[e] * moments.truncated(request, e);

  std::optional<std::pair<Path, double>> best;
  std::set<Rational> tried;
  for (std::size_t guess = 0; guess < graph.edges.size(); ++guess) {
    if (!admissible[guess]) continue;
    const Rational& width = graph.edges[guess].capacity;
    if (!tried.insert(width).second) continue;
    std::vector<bool> allowed(graph.edges.size());
    for (std::size_t e = 0; e < graph.edges.size(); ++e) allowed[e] = admissible[e] && graph.edges[e].capacity >= width;
    auto path = shortest_path(graph, allowed, weights, req.source, req.sink);
    if (!path) continue;
    double value = 0.0;
    for (std::size_t e : path->edges) value += weights[e];
    value += c * moments.exceptional(request, bottleneck_capacity(graph, *path));
    if (!best || value < best->second || (value == best->second && path_less(*path, best->first))) {
      best = std::make_pair(std::move(*path), value);
    }
  }
  return best;
}

SeparationResult separation_oracle_dp(const RoutingInstance& graph, const TruncationThreshold& tau,
                                      const DualPoint& point) {
  SeparationResult result;
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    if (point.b[e] < 0) {
      result.kind = SeparationResult::Kind::kNegativeEdgeDual;
      result.edge = e;
      result.value = point.b[e];
      return result;
    }
  }
  if (point.c < 0) {
    result.kind = SeparationResult::Kind::kNegativeExceptionalDual;
    result.value = point.c;
    return result;
  }
  RoutingMoments moments(graph, tau);
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    auto best = cheapest_dual_path(moments, j, point.b, point.c);
    if (best && point.a[j] + best->second < 0) {
      result.kind = SeparationResult::Kind::kViolatedPath;
      result.request = j;
      result.path = std::move(best->first);
      result.value = point.a[j] + best->second;
      return result;
    }
  }
  return result;
}

namespace {

struct Column {
  std::size_t request;
  Path path;
};

// Master over a fixed column set: min sum_j u_j with the capacity rows hard.
// Rows: assign_j for every request, then one per edge, then the exceptional row.
LinearProgram master_lp(const RoutingMoments& moments, const std::vector<Column>& columns) {
  const auto& graph = moments.graph;
  const double tau = moments.tau.value();
  LinearProgram lp;
  lp.objective = std::vector<double>{};
  std::vector<std::vector<std::pair<std::size_t, double>>> assign(graph.requests.size());
  std::vector<std::vector<std::pair<std::size_t, double>>> edge_rows(graph.edges.size());
  std::vector<std::pair<std::size_t, double>> exceptional;
  for (std::size_t k = 0; k < columns.size(); ++k) {
    const auto& col = columns[k];
    std::size_t var = lp.add_variable("y_" + std::to_string(col.request) + "_" + std::to_string(k));
    assign[col.request].push_back({var, 1.0});
    for (std::size_t e : col.path.edges) {
      double t = moments.truncated(col.request, e);
      if (t != 0.0) edge_rows[e].push_back({var, t});
    }
    double x = moments.exceptional(col.request, bottleneck_capacity(graph, col.path));
    if (x != 0.0) exceptional.push_back({var, x});
  }
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    std::size_t u = lp.add_variable("u_" + std::to_string(j));
    (*lp.objective)[u] = 1.0;
    assign[j].push_back({u, 1.0});
    lp.add_constraint("assign_" + std::to_string(j), std::move(assign[j]), Sense::kEqual, 1.0);
  }
  for (std::size_t e = 0; e < graph.edges.size(); ++e) {
    lp.add_constraint("edge_" + std::to_string(e), std::move(edge_rows[e]), Sense::kLessEqual, tau);
  }
  lp.add_constraint("exceptional", std::move(exceptional), Sense::kLessEqual, tau);
  return lp;
}

LppResult finish(const RoutingInstance& graph, const std::vector<Column>& columns, const LpResult& lr) {
  LppResult out;
  out.violation = std::max(lr.objective, 0.0);
  out.feasible = out.violation <= 1e-9;
  out.columns = columns.size();
  out.solution.requests.resize(graph.requests.size());
  if (!out.feasible) return out;
  std::vector<double> totals(graph.requests.size(), 0.0);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (lr.x[k] > 0.0) {
      out.solution.requests[columns[k].request].push_back({0, columns[k].path, lr.x[k]});
      totals[columns[k].request] += lr.x[k];
    }
  }
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    for (auto& choice : out.solution.requests[j]) choice.weight /= totals[j];
  }
  return out;
}

bool has_admissible_paths(const RoutingMoments& moments) {
  for (std::size_t j = 0; j < moments.graph.requests.size(); ++j) {
    const auto& r = moments.graph.requests[j];
    if (!reachable(moments.graph, moments.admissible(j), r.source, r.sink)) return false;
  }
  return true;
}

LppResult infeasible_without_paths(const RoutingInstance& graph) {
  LppResult out;
  out.violation = 1.0;
  out.solution.requests.resize(graph.requests.size());
  return out;
}

}  // namespace

LppResult solve_lpp_column_generation(const RoutingInstance& graph, const TruncationThreshold& tau) {
  RoutingMoments moments(graph, tau);
  if (!has_admissible_paths(moments)) return infeasible_without_paths(graph);

  std::vector<Column> columns;
  std::set<std::pair<std::size_t, std::vector<std::size_t>>> known;
  const std::vector<double> zero(graph.edges.size(), 0.0);
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    auto seed = cheapest_dual_path(moments, j, zero, 0.0);
    known.insert({j, seed->first.edges});
    columns.push_back({j, std::move(seed->first)});
  }

  const std::size_t max_iterations = 10000;
  for (std::size_t iteration = 1; iteration <= max_iterations; ++iteration) {
    LinearProgram lp = master_lp(moments, columns);
    LpResult lr = solve_lp(lp);
    if (lr.status != LpStatus::kOptimal) throw NumericalFailure("restricted path LP did not solve to optimality");
    if (lr.objective <= 1e-9) {
      LppResult out = finish(graph, columns, lr);
      out.iterations = iteration;
      return out;
    }
    // Duals of the master map onto the path LP's dual: a = -pi, b = -mu_e, c = -mu_0.
    const std::size_t n = graph.requests.size();
    DualPoint point;
    for (std::size_t j = 0; j < n; ++j) point.a.push_back(-lr.duals[j]);
    for (std::size_t e = 0; e < graph.edges.size(); ++e) point.b.push_back(std::max(0.0, -lr.duals[n + e]));
    point.c = std::max(0.0, -lr.duals[n + graph.edges.size()]);

    bool added = false;
    for (std::size_t j = 0; j < n; ++j) {
      auto best = cheapest_dual_path(moments, j, point.b, point.c);
      if (!best || point.a[j] + best->second >= -1e-9) continue;
      if (!known.insert({j, best->first.edges}).second) continue;
      columns.push_back({j, std::move(best->first)});
      added = true;
    }
    if (!added) {
      LppResult out = finish(graph, columns, lr);
      out.iterations = iteration;
      return out;
    }
  }
  throw NumericalFailure("column generation did not converge");
}

namespace {

std::vector<Column> all_columns(const RoutingMoments& moments) {
  std::vector<Column> columns;
  for (std::size_t j = 0; j < moments.graph.requests.size(); ++j) {
    const auto& r = moments.graph.requests[j];
    for (auto& path : enumerate_simple_paths(moments.graph, moments.admissible(j), r.source, r.sink)) {
      columns.push_back({j, std::move(path)});
    }
  }
  return columns;
}

}  // namespace

LinearProgram lpp_enumerated_program(const RoutingInstance& graph, const TruncationThreshold& tau) {
  RoutingMoments moments(graph, tau);
  return master_lp(moments, all_columns(moments));
}

LppResult solve_lpp_enumerated(const RoutingInstance& graph, const TruncationThreshold& tau) {
  RoutingMoments moments(graph, tau);
  if (!has_admissible_paths(moments)) return infeasible_without_paths(graph);
  std::vector<Column> columns = all_columns(moments);
  LpResult lr = solve_lp(master_lp(moments, columns));
  if (lr.status != LpStatus::kOptimal) throw NumericalFailure("path LP did not solve to optimality");
  LppResult out = finish(graph, columns, lr);
  out.iterations = 1;
  return out;
}

double lpp_upper_bracket(const RoutingInstance& graph) {
  Rational total = 0;
  for (std::size_t j = 0; j < graph.requests.size(); ++j) {
    const auto& r = graph.requests[j];
    // Widest path: the largest capacity whose edges still connect source to sink.
    std::vector<Rational> widths;
    for (const auto& e : graph.edges) widths.push_back(e.capacity);
    std::sort(widths.begin(), widths.end());
    widths.erase(std::unique(widths.begin(), widths.end()), widths.end());
    Rational widest = 0;
    for (auto it = widths.rbegin(); it != widths.rend(); ++it) {
      std::vector<bool> allowed(graph.edges.size());
      for (std::size_t e = 0; e < graph.edges.size(); ++e) allowed[e] = graph.edges[e].capacity >= *it;
      if (reachable(graph, allowed, r.source, r.sink)) {
        widest = *it;
        break;
      }
    }
    if (widest == 0) throw NoFeasiblePath("request " + std::to_string(j) + " has no source-sink path");
    total += mean_exact(r.demand) / widest;
  }
  return to_double_up(total);
}

RoutingTauResult min_feasible_routing_tau(const RoutingInstance& graph, double eps) {
  RoutingTauResult result;
  double hi = lpp_upper_bracket(graph);
  if (hi <= 0.0) hi = eps;
  auto solve_at = [&](double tau) {
    ++result.solves;
    return solve_lpp_column_generation(graph, TruncationThreshold(tau));
  };
  LppResult top = solve_at(hi);
  if (!top.feasible) throw NoFeasibleTau("path LP is infeasible at the upper bracket " + std::to_string(hi));
  result.tau = hi;
  result.solution = std::move(top.solution);
  double lo = 0.0;
  while (hi - lo > eps * hi) {
    double mid = 0.5 * (lo + hi);
    LppResult r = solve_at(mid);
    if (r.feasible) {
      hi = mid;
      result.tau = mid;
      result.solution = std::move(r.solution);
    } else {
      lo = mid;
      result.infeasible = mid;
    }
  }
  return result;
}

}  // namespace cbal

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cbal/config_lp.hpp"
#include "cbal/graph.hpp"
#include "cbal/instance.hpp"

namespace cbal {

/// Dual of the path LP: a per request, b per edge, c for the exceptional row.
struct DualPoint {
  std::vector<double> a;
  std::vector<double> b;
  double c = 0.0;
};

struct SeparationResult {
  enum class Kind { kFeasible, kNegativeEdgeDual, kNegativeExceptionalDual, kViolatedPath };
  Kind kind = Kind::kFeasible;
  std::size_t request = 0;
  std::size_t edge = 0;
  Path path;
  /// a_j + sum_e b_e E[X^T_ej] + c E[max_e X^E_ej] for the returned path.
  double value = 0.0;
};

/// Per-request moments the routing LP and online router need.
struct RoutingMoments {
  explicit RoutingMoments(const RoutingInstance& graph, const TruncationThreshold& tau);

  /// E[(X_j / c_e)^T].
  double truncated(std::size_t request, std::size_t edge) const { return truncated_[request][edge]; }
  /// E[(X_j / c)^E] for the bottleneck capacity c of a path.
  double exceptional(std::size_t request, const Rational& capacity) const;
  const std::vector<bool>& admissible(std::size_t request) const { return admissible_[request]; }

  const RoutingInstance& graph;
  TruncationThreshold tau;

 private:
  std::vector<std::vector<double>> truncated_;
  std::vector<std::vector<bool>> admissible_;
};

/// Cheapest admissible path for one request under sum_e b_e E[X^T_ej] +
/// c E[max_e X^E_ej], found by guessing the bottleneck capacity and running
/// a shortest-path search on the edges at least that wide.
std::optional<std::pair<Path, double>> cheapest_dual_path(const RoutingMoments& moments, std::size_t request,
                                                          const std::vector<double>& b, double c);

/// Returns the first violated dual constraint, or kFeasible.
SeparationResult separation_oracle_dp(const RoutingInstance& graph, const TruncationThreshold& tau,
                                      const DualPoint& point);

struct LppResult {
  bool feasible = false;
  double violation = 0.0;  // phase-1 optimum: total shortfall of the assignment rows
  FractionalSolution solution;
  std::size_t iterations = 0;
  std::size_t columns = 0;
};

/// Column generation on the path LP. The master minimizes the total
/// shortfall sum_j u_j of the assignment rows sum_P y_P + u_j = 1 with the
/// capacity rows kept hard, which makes it the phase-1 problem of the full
/// LP. Requests without an admissible path make the LP infeasible.
LppResult solve_lpp_column_generation(const RoutingInstance& graph, const TruncationThreshold& tau);

/// Same LP over every admissible simple path. Exponential; used as an oracle.
LppResult solve_lpp_enumerated(const RoutingInstance& graph, const TruncationThreshold& tau);

/// The LP solved by solve_lpp_enumerated, for dumping.
LinearProgram lpp_enumerated_program(const RoutingInstance& graph, const TruncationThreshold& tau);

/// Sum over requests of E[X_j] divided by the widest-path bottleneck: every
/// request on its widest path is feasible there.
double lpp_upper_bracket(const RoutingInstance& graph);

struct RoutingTauResult {
  double tau = 0.0;
  double infeasible = 0.0;
  FractionalSolution solution;
  std::size_t solves = 0;
};

RoutingTauResult min_feasible_routing_tau(const RoutingInstance& graph, double eps = 1e-3);

}  // namespace cbal

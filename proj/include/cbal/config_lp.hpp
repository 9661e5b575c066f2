#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cbal/graph.hpp"
#include "cbal/instance.hpp"
#include "cbal/linear_program.hpp"

namespace cbal {

/// One weighted choice of a request: a configuration index, or a path for routing.
struct FractionalChoice {
  std::size_t config = 0;
  Path path;
  double weight = 0.0;
};

/// Per request, the choices carrying weight. Weights of a request sum to one.
struct FractionalSolution {
  std::vector<std::vector<FractionalChoice>> requests;
};

/// LP_C at a fixed tau together with the variable map.
struct LpcModel {
  LinearProgram lp;
  std::vector<std::vector<std::size_t>> variable;  // [request][config]
  std::vector<std::vector<bool>> pruned;           // E[max_i X_i(c)] > tau
};

/// Rows: assign_j (sum_c y = 1), trunc_i (expected truncated load <= tau),
/// exceptional (expected exceptional maxima <= tau), prune_j_c (y = 0).
LpcModel build_lpc(const ConfigInstance& instance, const TruncationThreshold& tau);

/// Solves LP_C; nullopt when infeasible. Pruned configurations get weight exactly 0.
std::optional<FractionalSolution> solve_lpc(const ConfigInstance& instance, const TruncationThreshold& tau,
                                            double* residual = nullptr);

class NoFeasibleTau : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TauSearchResult {
  double tau = 0.0;       // smallest feasible value found
  double infeasible = 0;  // largest value certified infeasible (0 if none was tested)
  FractionalSolution solution;
  std::size_t solves = 0;
};

/// Sum over requests of the cheapest E[max_i X_i(c)]: LP_C is always feasible there.
double lpc_upper_bracket(const ConfigInstance& instance);

/// Binary search for the smallest tau with LP_C(tau) feasible, to relative
/// precision eps. Throws NoFeasibleTau when hi is infeasible. lo <= 0 means
/// "no lower certificate".
TauSearchResult min_feasible_tau(const ConfigInstance& instance, double lo, double hi, double eps = 1e-3);
TauSearchResult min_feasible_tau(const ConfigInstance& instance, double eps = 1e-3);

}  // namespace cbal

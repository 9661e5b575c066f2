#pragma once

#include <stdexcept>
#include <vector>

#include "cbal/linear_program.hpp"

namespace cbal {

/// The solver could not certify feasibility or infeasibility.
class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  /// One multiplier per constraint in the caller's orientation, so that
  /// reduced costs read c_j - sum_i duals[i] * a_ij. Minimization signs:
  /// <= rows get duals <= 0, >= rows duals >= 0.
  std::vector<double> duals;
  double objective = 0.0;
  /// Phase-1 optimum: total violation of the constraints that needed an artificial.
  double infeasibility = 0.0;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double feasibility_tolerance = 1e-9;
  double pivot_tolerance = 1e-11;
  double cost_tolerance = 1e-11;
  std::size_t max_pivots = 200000;
};

/// Dense two-phase tableau simplex with Bland's rule. Phase 1 minimizes the
/// sum of artificial variables; the LP counts as infeasible when that optimum
/// exceeds feasibility_tolerance. Phase 2 runs only when an objective is set.
LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

struct FeasibilityResult {
  bool feasible = false;
  std::vector<double> x;
  double residual = 0.0;  // phase-1 optimum
};

/// Feasible iff the phase-1 optimum is <= 1e-9. Throws NumericalFailure when
/// the returned point disagrees with that verdict.
FeasibilityResult solve_feasibility(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace cbal

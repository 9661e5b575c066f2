#include "cbal/simplex.hpp"

#include <cmath>
#include <limits>

namespace cbal {

namespace {

// Rows are normalized to nonnegative rhs. Column layout: structural, then one
// slack or surplus per inequality, then artificials; the last column is rhs.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const SimplexOptions& options) : options_(options) {
    rows_ = lp.constraints.size();
    structural_ = lp.variables.size();
    flipped_.assign(rows_, false);
    std::vector<Sense> sense(rows_);
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      sense[i] = lp.constraints[i].sense;
      if (lp.constraints[i].rhs < 0) {
        flipped_[i] = true;
        if (sense[i] == Sense::kLessEqual) {
          sense[i] = Sense::kGreaterEqual;
        } else if (sense[i] == Sense::kGreaterEqual) {
          sense[i] = Sense::kLessEqual;
        }
      }
      if (sense[i] != Sense::kEqual) ++slacks;
      if (sense[i] != Sense::kLessEqual) ++artificials;
    }
    first_artificial_ = structural_ + slacks;
    cols_ = first_artificial_ + artificials;
    data_.assign((rows_ + 1) * (cols_ + 1), 0.0);
    basis_.assign(rows_, 0);
    unit_.assign(rows_, 0);

    std::size_t next_slack = structural_;
    std::size_t next_artificial = first_artificial_;
    for (std::size_t i = 0; i < rows_; ++i) {
      const auto& row = lp.constraints[i];
      double sign = flipped_[i] ? -1.0 : 1.0;
      for (const auto& [var, coef] : row.terms) at(i, var) += sign * coef;
      rhs(i) = sign * row.rhs;
      if (sense[i] == Sense::kLessEqual) {
        at(i, next_slack) = 1.0;
        basis_[i] = unit_[i] = next_slack++;
      } else {
        if (sense[i] == Sense::kGreaterEqual) at(i, next_slack++) = -1.0;
        at(i, next_artificial) = 1.0;
        basis_[i] = unit_[i] = next_artificial++;
      }
    }
  }

  double& at(std::size_t r, std::size_t c) { return data_[r * (cols_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, cols_); }
  double& cost_row(std::size_t c) { return at(rows_, c); }

  bool is_artificial(std::size_t c) const { return c >= first_artificial_ && c < cols_; }

  // Installs a cost vector and prices out the current basis.
  void set_costs(const std::vector<double>& cost) {
    cost_ = cost;
    for (std::size_t c = 0; c <= cols_; ++c) cost_row(c) = c < cols_ ? cost[c] : 0.0;
    for (std::size_t r = 0; r < rows_; ++r) {
      double cb = cost[basis_[r]];
      if (cb == 0.0) continue;
      for (std::size_t c = 0; c <= cols_; ++c) cost_row(c) -= cb * at(r, c);
    }
  }

  double objective_value() { return -cost_row(cols_); }

  void pivot(std::size_t r, std::size_t c) {
    double p = at(r, c);
    for (std::size_t k = 0; k <= cols_; ++k) at(r, k) /= p;
    at(r, c) = 1.0;
    for (std::size_t i = 0; i <= rows_; ++i) {
      if (i == r) continue;
      double f = at(i, c);
      if (f == 0.0) continue;
      for (std::size_t k = 0; k <= cols_; ++k) at(i, k) -= f * at(r, k);
      at(i, c) = 0.0;
    }
    basis_[r] = c;
    ++pivots_;
  }

  // Bland's rule. Returns false when unbounded.
  bool optimize(bool allow_artificials) {
    while (true) {
      if (pivots_ > options_.max_pivots) throw NumericalFailure("simplex pivot limit exceeded");
      std::size_t enter = cols_;
      for (std::size_t c = 0; c < cols_; ++c) {
        if (!allow_artificials && is_artificial(c)) continue;
        if (cost_row(c) < -options_.cost_tolerance) {
          enter = c;
          break;
        }
      }
      if (enter == cols_) return true;
      std::size_t leave = rows_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows_; ++r) {
        double a = at(r, enter);
        if (a <= options_.pivot_tolerance) continue;
        double ratio = std::max(rhs(r), 0.0) / a;
        if (leave == rows_ || ratio < best || (ratio == best && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

  // After phase 1, pivots basic artificials out wherever a non-artificial
  // column has a usable entry. Rows where none exists are redundant.
  void expel_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      std::size_t best = cols_;
      double best_abs = options_.pivot_tolerance * 1e3;
      for (std::size_t c = 0; c < first_artificial_; ++c) {
        if (std::abs(at(r, c)) > best_abs) {
          best_abs = std::abs(at(r, c));
          best = c;
        }
      }
      if (best != cols_) pivot(r, best);
    }
  }

  std::vector<double> primal() {
    std::vector<double> x(structural_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (basis_[r] < structural_) x[basis_[r]] = std::max(rhs(r), 0.0);
    }
    return x;
  }

  std::vector<double> duals() {
    std::vector<double> y(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      double v = cost_[unit_[r]] - cost_row(unit_[r]);
      y[r] = flipped_[r] ? -v : v;
    }
    return y;
  }

  std::size_t cols() const { return cols_; }
  std::size_t first_artificial() const { return first_artificial_; }
  std::size_t pivots() const { return pivots_; }

 private:
  SimplexOptions options_;
  std::size_t rows_ = 0;
  std::size_t structural_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> unit_;
  std::vector<bool> flipped_;
  std::vector<double> cost_;
  std::size_t pivots_ = 0;
};

}  // namespace

LpResult solve_lp(const LinearProgram& lp, const SimplexOptions& options) {
  lp.check();
  Tableau tableau(lp, options);
  LpResult result;

  std::vector<double> phase1(tableau.cols(), 0.0);
  for (std::size_t c = tableau.first_artificial(); c < tableau.cols(); ++c) phase1[c] = 1.0;
  tableau.set_costs(phase1);
  tableau.optimize(true);
  result.infeasibility = std::max(tableau.objective_value(), 0.0);
  result.x = tableau.primal();

  if (result.infeasibility > options.feasibility_tolerance) {
    result.status = LpStatus::kInfeasible;
    result.duals = tableau.duals();
    result.pivots = tableau.pivots();
    return result;
  }

  tableau.expel_artificials();
  std::vector<double> phase2(tableau.cols(), 0.0);
  if (lp.objective) {
    for (std::size_t v = 0; v < lp.variables.size(); ++v) phase2[v] = (*lp.objective)[v];
  }
  tableau.set_costs(phase2);
  if (lp.objective && !tableau.optimize(false)) {
    result.status = LpStatus::kUnbounded;
  } else {
    result.status = LpStatus::kOptimal;
  }
  result.x = tableau.primal();
  result.duals = tableau.duals();
  result.objective = tableau.objective_value();
  result.pivots = tableau.pivots();
  return result;
}

FeasibilityResult solve_feasibility(const LinearProgram& lp, const SimplexOptions& options) {
  LinearProgram plain = lp;
  plain.objective.reset();
  LpResult lr = solve_lp(plain, options);
  FeasibilityResult out;
  out.feasible = lr.status == LpStatus::kOptimal;
  out.residual = lr.infeasibility;
  out.x = std::move(lr.x);
  if (out.feasible) {
    double violation = lp.max_violation(out.x);
    if (violation > 1e-7) {
      throw NumericalFailure("simplex reported feasibility but the point violates a constraint by " +
                             std::to_string(violation));
    }
  }
  return out;
}

}  // namespace cbal

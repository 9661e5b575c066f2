#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cbal {

enum class Sense { kLessEqual, kEqual, kGreaterEqual };

struct LinearConstraint {
  std::string name;
  std::vector<std::pair<std::size_t, double>> terms;  // (variable, coefficient)
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
};

/// Variables are nonnegative. The objective, when present, is minimized.
struct LinearProgram {
  std::vector<std::string> variables;
  std::vector<LinearConstraint> constraints;
  std::optional<std::vector<double>> objective;

  std::size_t add_variable(std::string name);
  std::size_t add_constraint(std::string name, std::vector<std::pair<std::size_t, double>> terms, Sense sense,
                             double rhs);
  std::size_t variable_count() const { return variables.size(); }
  std::size_t constraint_count() const { return constraints.size(); }

  /// Throws std::invalid_argument on out-of-range indices or non-finite data.
  void check() const;

  /// Largest violation of any constraint or sign bound at x.
  double max_violation(const std::vector<double>& x) const;
};

/// CPLEX LP text, e.g. for cross-checking with an external solver.
std::string to_lp_format(const LinearProgram& lp, const std::string& title = "cbal");

}  // namespace cbal

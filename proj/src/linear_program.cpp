#include "cbal/linear_program.hpp"

#include <cmath>
#include <sstream>

namespace cbal {

std::size_t LinearProgram::add_variable(std::string name) {
  variables.push_back(std::move(name));
  if (objective) objective->push_back(0.0);
  return variables.size() - 1;
}

std::size_t LinearProgram::add_constraint(std::string name, std::vector<std::pair<std::size_t, double>> terms,
                                          Sense sense, double rhs) {
  constraints.push_back({std::move(name), std::move(terms), sense, rhs});
  return constraints.size() - 1;
}

void LinearProgram::check() const {
  if (objective && objective->size() != variables.size()) {
    throw std::invalid_argument("objective length does not match variable count");
  }
  if (objective) {
    for (double v : *objective) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite objective coefficient");
    }
  }
  for (const auto& row : constraints) {
    if (!std::isfinite(row.rhs)) throw std::invalid_argument("non-finite rhs in " + row.name);
    for (const auto& [var, coef] : row.terms) {
      if (var >= variables.size()) throw std::invalid_argument("constraint " + row.name + " uses unknown variable");
      if (!std::isfinite(coef)) throw std::invalid_argument("non-finite coefficient in " + row.name);
    }
  }
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& row : constraints) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
    double gap = lhs - row.rhs;
    switch (row.sense) {
      case Sense::kLessEqual: worst = std::max(worst, gap); break;
      case Sense::kGreaterEqual: worst = std::max(worst, -gap); break;
      case Sense::kEqual: worst = std::max(worst, std::abs(gap)); break;
    }
  }
  return worst;
}

namespace {

void write_terms(std::ostringstream& out, const std::vector<std::pair<std::size_t, double>>& terms,
                 const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& [var, coef] : terms) {
    if (coef < 0) {
      out << " - ";
    } else if (!first) {
      out << " + ";
    } else {
      out << " ";
    }
    out << std::abs(coef) << " " << names[var];
    first = false;
  }
  if (first) out << " 0 " << (names.empty() ? "x" : names.front());
}

}  // namespace

std::string to_lp_format(const LinearProgram& lp, const std::string& title) {
  std::ostringstream out;
  out.precision(17);
  out << "\\ " << title << "\n";
  out << "Minimize\n obj:";
  std::vector<std::pair<std::size_t, double>> objective;
  if (lp.objective) {
    for (std::size_t v = 0; v < lp.variables.size(); ++v) {
      if ((*lp.objective)[v] != 0.0) objective.push_back({v, (*lp.objective)[v]});
    }
  }
  write_terms(out, objective, lp.variables);
  out << "\nSubject To\n";
  for (const auto& row : lp.constraints) {
    out << " " << row.name << ":";
    write_terms(out, row.terms, lp.variables);
    switch (row.sense) {
      case Sense::kLessEqual: out << " <= "; break;
      case Sense::kEqual: out << " = "; break;
      case Sense::kGreaterEqual: out << " >= "; break;
    }
    out << row.rhs << "\n";
  }
  // Nonnegativity is the LP-format default bound, nothing to emit.
  out << "End\n";
  return out.str();
}

}  // namespace cbal

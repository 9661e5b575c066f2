#include "cbal/config_lp.hpp"

#include <algorithm>

#include "cbal/simplex.hpp"

namespace cbal {

LpcModel build_lpc(const ConfigInstance& instance, const TruncationThreshold& tau) {
  LpcModel model;
  const Rational& t = tau.exact();
  const std::size_t n = instance.requests.size();
  model.variable.resize(n);
  model.pruned.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < instance.requests[j].configs.size(); ++c) {
      model.variable[j].push_back(
          model.lp.add_variable("y_" + std::to_string(j) + "_" + std::to_string(c)));
      model.pruned[j].push_back(expected_max_exact(instance.requests[j].configs[c]) > t);
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t var : model.variable[j]) terms.push_back({var, 1.0});
    model.lp.add_constraint("assign_" + std::to_string(j), std::move(terms), Sense::kEqual, 1.0);
  }
  for (std::size_t i = 0; i < instance.m; ++i) {
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t c = 0; c < instance.requests[j].configs.size(); ++c) {
        Rational v = truncated_resource_mean_exact(instance.requests[j].configs[c], i, t);
        if (v != 0) terms.push_back({model.variable[j][c], to_double(v)});
      }
    }
    model.lp.add_constraint("trunc_" + std::to_string(i), std::move(terms), Sense::kLessEqual, tau.value());
  }
  std::vector<std::pair<std::size_t, double>> exceptional;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < instance.requests[j].configs.size(); ++c) {
      Rational v = exceptional_max_mean_exact(instance.requests[j].configs[c], t);
      if (v != 0) exceptional.push_back({model.variable[j][c], to_double(v)});
    }
  }
  model.lp.add_constraint("exceptional", std::move(exceptional), Sense::kLessEqual, tau.value());
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t c = 0; c < model.variable[j].size(); ++c) {
      if (!model.pruned[j][c]) continue;
      model.lp.add_constraint("prune_" + std::to_string(j) + "_" + std::to_string(c), {{model.variable[j][c], 1.0}},
                              Sense::kEqual, 0.0);
    }
  }
  return model;
}

std::optional<FractionalSolution> solve_lpc(const ConfigInstance& instance, const TruncationThreshold& tau,
                                            double* residual) {
  LpcModel model = build_lpc(instance, tau);
  FeasibilityResult fr = solve_feasibility(model.lp);
  if (residual) *residual = fr.residual;
  if (!fr.feasible) return std::nullopt;
  FractionalSolution solution;
  solution.requests.resize(instance.requests.size());
  for (std::size_t j = 0; j < instance.requests.size(); ++j) {
    double total = 0.0;
    for (std::size_t c = 0; c < model.variable[j].size(); ++c) {
      double w = model.pruned[j][c] ? 0.0 : fr.x[model.variable[j][c]];
      if (w > 0.0) {
        solution.requests[j].push_back({c, {}, w});
        total += w;
      }
    }
    // Renormalize away the solver's rounding; the gap is below the feasibility tolerance.
    for (auto& choice : solution.requests[j]) choice.weight /= total;
  }
  return solution;
}

double lpc_upper_bracket(const ConfigInstance& instance) {
  Rational total = 0;
  for (const auto& request : instance.requests) {
    Rational best = expected_max_exact(request.configs.front());
    for (const auto& config : request.configs) best = std::min(best, expected_max_exact(config));
    total += best;
  }
  return to_double_up(total);
}

TauSearchResult min_feasible_tau(const ConfigInstance& instance, double lo, double hi, double eps) {
  TauSearchResult result;
  if (hi <= 0.0) {
    // Every request has a configuration that is zero almost surely; any positive tau works.
    hi = eps;
  }
  auto feasible_at = [&](double tau) {
    ++result.solves;
    return solve_lpc(instance, TruncationThreshold(tau));
  };
  auto at_hi = feasible_at(hi);
  if (!at_hi) throw NoFeasibleTau("LP_C is infeasible at the upper bracket " + std::to_string(hi));
  result.tau = hi;
  result.solution = std::move(*at_hi);
  lo = std::max(lo, 0.0);
  if (lo > 0.0 && lo < hi) {
    if (auto at_lo = feasible_at(lo)) {
      result.tau = lo;
      result.solution = std::move(*at_lo);
      return result;
    }
    result.infeasible = lo;
  }
  while (hi - lo > eps * hi) {
    double mid = 0.5 * (lo + hi);
    if (auto s = feasible_at(mid)) {
      hi = mid;
      result.tau = mid;
      result.solution = std::move(*s);
    } else {
      lo = mid;
      result.infeasible = mid;
    }
  }
  return result;
}

TauSearchResult min_feasible_tau(const ConfigInstance& instance, double eps) {
  return min_feasible_tau(instance, 0.0, lpc_upper_bracket(instance), eps);
}

}  // namespace cbal

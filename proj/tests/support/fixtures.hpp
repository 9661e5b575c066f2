#pragma once
// Shared fixtures and independent reference computations for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "cbal/distribution.hpp"
#include "cbal/generators.hpp"
#include "cbal/graph.hpp"
#include "cbal/instance.hpp"
#include "cbal/rational.hpp"
#include "cbal/reductions.hpp"
#include "cbal/rng.hpp"

namespace fixtures {

using cbal::Rational;

inline cbal::DiscreteDistribution law(std::vector<std::pair<Rational, Rational>> atoms) {
  std::vector<cbal::Atom> out;
  for (auto& [v, p] : atoms) out.push_back({v, p});
  return cbal::DiscreteDistribution(std::move(out));
}

inline cbal::DiscreteDistribution point(Rational v) { return cbal::DiscreteDistribution::point_mass(v); }

// s=0 -> v=1 -> t=2 with capacities 1, 1 and a direct s -> t edge of capacity 1/2.
inline cbal::RoutingInstance triangle(const cbal::DiscreteDistribution& demand) {
  cbal::RoutingInstance g;
  g.vertices = 3;
  g.edges = {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, cbal::rational(1, 2)}};
  g.requests.push_back({0, 2, demand});
  return g;
}

inline cbal::ConfigInstance as_config(const cbal::Instance& inst) {
  if (auto* c = std::get_if<cbal::ConfigInstance>(&inst)) return *c;
  if (auto* u = std::get_if<cbal::UnrelatedInstance>(&inst)) return cbal::unrelated_to_config(*u);
  return cbal::related_to_config(std::get<cbal::RelatedInstance>(inst));
}

// The seeded tiny suite: n <= 3, m <= 3, at most 2 configurations, support <= 2.
inline cbal::ConfigInstance tiny_instance(std::uint64_t seed) {
  cbal::CounterRng rng(seed, cbal::derive_stream(cbal::StreamDomain::kGenerator, 0, 0));
  cbal::TinyParams params;
  params.max_requests = 3;
  params.max_resources = 3;
  params.max_configs = 2;
  params.max_support = 2;
  return as_config(cbal::random_tiny_instance(params, rng));
}

inline std::vector<cbal::ConfigInstance> tiny_suite(std::size_t count) {
  std::vector<cbal::ConfigInstance> out;
  for (std::uint64_t s = 0; s < count; ++s) out.push_back(tiny_instance(s));
  return out;
}

inline cbal::RoutingInstance random_dag(std::uint64_t seed) {
  cbal::CounterRng rng(seed, cbal::derive_stream(cbal::StreamDomain::kGenerator, 1, 0));
  cbal::RoutingParams params;
  params.max_vertices = 6;
  params.max_edges = 12;
  params.max_requests = 3;
  return cbal::random_routing_dag(params, rng);
}

// Plain recursion over (remaining, loads) without memoization: an independent
// reference for the oracle on instances with n <= 3.
inline Rational brute_force_opt(const cbal::ConfigInstance& inst, std::uint32_t remaining,
                                std::vector<Rational> loads) {
  if (remaining == 0) return *std::max_element(loads.begin(), loads.end());
  bool first = true;
  Rational best;
  for (std::size_t j = 0; j < inst.requests.size(); ++j) {
    if (!(remaining >> j & 1u)) continue;
    for (const auto& config : inst.requests[j].configs) {
      Rational value = 0;
      for (const auto& atom : config.law.atoms()) {
        auto next = loads;
        for (std::size_t i = 0; i < next.size(); ++i) next[i] += config.multipliers[i] * atom.value;
        value += atom.prob * brute_force_opt(inst, remaining & ~(1u << j), next);
      }
      if (first || value < best) best = value;
      first = false;
    }
  }
  return best;
}

inline Rational brute_force_opt(const cbal::ConfigInstance& inst) {
  return brute_force_opt(inst, (1u << inst.requests.size()) - 1, std::vector<Rational>(inst.m, Rational(0)));
}

// Every simple source-sink path, by straightforward DFS over all edges.
inline std::vector<std::vector<std::size_t>> all_paths(const cbal::RoutingInstance& g, std::size_t s, std::size_t t,
                                                       const std::vector<bool>& allowed) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> stack;
  std::vector<bool> seen(g.vertices, false);
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (v == t) {
      out.push_back(stack);
      return;
    }
    seen[v] = true;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      if (!allowed[e] || g.edges[e].tail != v || seen[g.edges[e].head]) continue;
      stack.push_back(e);
      dfs(g.edges[e].head);
      stack.pop_back();
    }
    seen[v] = false;
  };
  dfs(s);
  return out;
}

// Potential increase of routing `demand` along `edges` from `load` (index 0 is the exceptional coordinate).
inline double path_delta_phi(const cbal::RoutingInstance& g, const std::vector<double>& load, double tau,
                             const cbal::DiscreteDistribution& demand, const std::vector<std::size_t>& edges) {
  Rational t = cbal::TruncationThreshold(tau).exact();
  Rational bottleneck = g.edges[edges.front()].capacity;
  for (auto e : edges) bottleneck = std::min(bottleneck, g.edges[e].capacity);
  auto step = [&](double l, double x) { return std::pow(1.5, (l + x) / tau) - std::pow(1.5, l / tau); };
  double delta = 0.0;
  Rational exc = 0;
  for (const auto& a : demand.atoms())
    if (a.value / bottleneck >= t) exc += a.prob * a.value / bottleneck;
  if (exc != 0) delta += step(load[0], cbal::to_double(exc));
  for (auto e : edges) {
    Rational tr = 0;
    for (const auto& a : demand.atoms())
      if (a.value / g.edges[e].capacity < t) tr += a.prob * a.value / g.edges[e].capacity;
    if (tr != 0) delta += step(load[e + 1], cbal::to_double(tr));
  }
  return delta;
}

}  // namespace fixtures

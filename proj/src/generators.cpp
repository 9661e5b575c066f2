#include "cbal/generators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cbal {

namespace {

std::size_t draw_count(std::size_t max, CounterRng& rng) { return 1 + static_cast<std::size_t>(rng.uniform_below(max)); }

Rational inverse_sqrt(std::size_t m) {
  Rational root = exact_sqrt_or_negative(Rational(static_cast<unsigned long>(m)));
  if (root > 0) return 1 / root;
  return rational_from_double(1.0 / std::sqrt(static_cast<double>(m)));
}

}  // namespace

RelatedInstance gen_adaptivity_gap_instance(std::size_t m, const Rational& tau) {
  if (m < 2) throw std::invalid_argument("adaptivity-gap instance needs m >= 2");
  if (tau <= 1) throw std::invalid_argument("adaptivity-gap instance needs tau > 1");
  RelatedInstance out;
  const Rational mm(static_cast<unsigned long>(m));
  out.speeds.push_back(Rational(1));
  for (std::size_t i = 1; i < m; ++i) out.speeds.push_back(1 / (tau * mm));
  out.jobs.push_back(DiscreteDistribution::scaled_bernoulli(tau, 1 / tau));
  for (std::size_t j = 1; j < m; ++j) out.jobs.push_back(DiscreteDistribution::point_mass(1 / mm));
  return out;
}

RelatedInstance gen_clairvoyance_adversary_instance(std::size_t m) {
  if (m < 1) throw std::invalid_argument("clairvoyance instance needs m >= 1");
  RelatedInstance out;
  Rational small = inverse_sqrt(m);
  out.speeds.push_back(Rational(1));
  for (std::size_t i = 1; i < m; ++i) out.speeds.push_back(small);
  out.jobs.push_back(DiscreteDistribution::point_mass(Rational(1)));
  for (std::size_t j = 1; j < m; ++j) out.jobs.push_back(DiscreteDistribution::point_mass(small));
  return out;
}

DiscreteDistribution random_law(std::size_t max_support, unsigned max_value, CounterRng& rng) {
  std::size_t support = std::min<std::size_t>(draw_count(max_support, rng), max_value + 1);
  std::vector<unsigned> pool(max_value + 1);
  for (unsigned v = 0; v <= max_value; ++v) pool[v] = v;
  // partial Fisher-Yates
  for (std::size_t k = 0; k < support; ++k) {
    std::size_t pick = k + static_cast<std::size_t>(rng.uniform_below(pool.size() - k));
    std::swap(pool[k], pool[pick]);
  }
  std::vector<unsigned> values(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(support));
  if (std::all_of(values.begin(), values.end(), [](unsigned v) { return v == 0; })) {
    values.front() = 1 + static_cast<unsigned>(rng.uniform_below(max_value));
  }
  std::vector<unsigned long> weights(support);
  unsigned long total = 0;
  for (auto& w : weights) {
    w = 1 + rng.uniform_below(3);
    total += w;
  }
  std::vector<Atom> atoms;
  for (std::size_t k = 0; k < support; ++k) {
    atoms.push_back({Rational(values[k]), rational(static_cast<long>(weights[k]), static_cast<long>(total))});
  }
  return DiscreteDistribution(std::move(atoms));
}

Instance random_tiny_instance(const TinyParams& params, CounterRng& rng) {
  TinyKind kind = params.kind;
  if (kind == TinyKind::kMixed) kind = static_cast<TinyKind>(rng.uniform_below(3));
  const std::size_t n = draw_count(params.max_requests, rng);
  const std::size_t m = draw_count(params.max_resources, rng);
  switch (kind) {
    case TinyKind::kConfig: {
      ConfigInstance out;
      out.m = m;
      for (std::size_t j = 0; j < n; ++j) {
        Request request;
        request.id = j;
        const std::size_t q = draw_count(params.max_configs, rng);
        for (std::size_t c = 0; c < q; ++c) {
          std::vector<Rational> multipliers(m);
          bool any = false;
          for (auto& a : multipliers) {
            a = static_cast<unsigned long>(rng.uniform_below(3));
            any = any || a != 0;
          }
          if (!any) multipliers[rng.uniform_below(m)] = 1;
          request.configs.push_back({std::move(multipliers), random_law(params.max_support, params.max_value, rng)});
        }
        out.requests.push_back(std::move(request));
      }
      return out;
    }
    case TinyKind::kUnrelated: {
      UnrelatedInstance out;
      out.m = m;
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<DiscreteDistribution> laws;
        for (std::size_t i = 0; i < m; ++i) laws.push_back(random_law(params.max_support, params.max_value, rng));
        out.jobs.push_back(std::move(laws));
      }
      return out;
    }
    default: {
      static const long kSpeedNum[] = {1, 1, 1, 2, 3};
      static const long kSpeedDen[] = {1, 2, 3, 1, 2};
      RelatedInstance out;
      for (std::size_t i = 0; i < m; ++i) {
        auto pick = rng.uniform_below(5);
        out.speeds.push_back(rational(kSpeedNum[pick], kSpeedDen[pick]));
      }
      for (std::size_t j = 0; j < n; ++j) out.jobs.push_back(random_law(params.max_support, params.max_value, rng));
      return out;
    }
  }
}

RoutingInstance random_routing_dag(const RoutingParams& params, CounterRng& rng) {
  static const long kCapNum[] = {1, 1, 3, 2, 3};
  static const long kCapDen[] = {2, 1, 2, 1, 1};
  RoutingInstance out;
  out.vertices = std::max<std::size_t>(2, 1 + draw_count(params.max_vertices - 1, rng));
  const std::size_t v = out.vertices;
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = a + 1; b < v; ++b) candidates.emplace_back(a, b);
  const std::size_t edge_target = std::min(candidates.size() + 2, draw_count(params.max_edges, rng) + v - 1);
  // a Hamiltonian chain guarantees 0 -> v-1 connectivity
  for (std::size_t a = 0; a + 1 < v && out.edges.size() < params.max_edges; ++a) {
    auto pick = rng.uniform_below(5);
    out.edges.push_back({a, a + 1, rational(kCapNum[pick], kCapDen[pick])});
  }
  while (out.edges.size() < std::min(edge_target, params.max_edges)) {
    auto [a, b] = candidates[rng.uniform_below(candidates.size())];
    auto pick = rng.uniform_below(5);
    out.edges.push_back({a, b, rational(kCapNum[pick], kCapDen[pick])});
  }
  const std::size_t n = draw_count(params.max_requests, rng);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t s = static_cast<std::size_t>(rng.uniform_below(v - 1));
    std::size_t t = s + 1 + static_cast<std::size_t>(rng.uniform_below(v - 1 - s));
    out.requests.push_back({s, t, random_law(params.max_support, params.max_value, rng)});
  }
  return out;
}

RelatedInstance random_related_instance(std::size_t machines, std::size_t jobs, std::size_t max_support,
                                        unsigned max_value, CounterRng& rng) {
  RelatedInstance out;
  for (std::size_t i = 0; i < machines; ++i) {
    if (i > 0 && rng.uniform_below(4) == 0) {
      out.speeds.push_back(out.speeds[rng.uniform_below(i)]);
      continue;
    }
    double exponent = -4.0 * rng.uniform01();
    double speed = std::pow(10.0, exponent);
    out.speeds.push_back(rational_from_double(speed));
  }
  for (std::size_t j = 0; j < jobs; ++j) out.jobs.push_back(random_law(max_support, max_value, rng));
  return out;
}

}  // namespace cbal

#pragma once

#include <cstddef>
#include <cstdint>

#include "cbal/instance.hpp"
#include "cbal/rng.hpp"

namespace cbal {

/// One fast machine (speed 1), m-1 slow machines of speed 1/(tau m), one job
/// tau * Bernoulli(1/tau) and m-1 deterministic jobs of size 1/m. Needs m >= 2, tau > 1.
RelatedInstance gen_adaptivity_gap_instance(std::size_t m, const Rational& tau);

/// One machine of speed 1 and m-1 of speed 1/sqrt(m); job pool of one big
/// job (size 1, listed first) and m-1 small jobs of size 1/sqrt(m). sqrt(m) is
/// exact for perfect squares and a double approximation otherwise.
RelatedInstance gen_clairvoyance_adversary_instance(std::size_t m);

enum class TinyKind { kConfig, kUnrelated, kRelated, kMixed };

/// Upper bounds for the oracle-tractable generator. Counts are drawn uniformly
/// from [1, max].
struct TinyParams {
  TinyKind kind = TinyKind::kMixed;
  std::size_t max_requests = 3;
  std::size_t max_resources = 3;
  std::size_t max_configs = 2;
  std::size_t max_support = 2;
  unsigned max_value = 4;
};

/// Reproducible random instance with exact rational probabilities. Every law
/// has at least one positive support value.
Instance random_tiny_instance(const TinyParams& params, CounterRng& rng);

/// Random law with support <= max_support over {0..max_value}, one value positive.
DiscreteDistribution random_law(std::size_t max_support, unsigned max_value, CounterRng& rng);

struct RoutingParams {
  std::size_t max_vertices = 6;
  std::size_t max_edges = 12;
  std::size_t max_requests = 3;
  std::size_t max_support = 2;
  unsigned max_value = 3;
};

/// Random DAG (edges go from lower to higher vertex id) with capacities in
/// {1/2, 1, 3/2, 2, 3}; every request's sink is reachable from its source.
RoutingInstance random_routing_dag(const RoutingParams& params, CounterRng& rng);

/// Speeds drawn log-uniformly over several orders of magnitude, with repeats.
RelatedInstance random_related_instance(std::size_t machines, std::size_t jobs, std::size_t max_support,
                                        unsigned max_value, CounterRng& rng);

}  // namespace cbal

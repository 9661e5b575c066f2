#include "cbal/instance.hpp"

#include <algorithm>
#include <queue>

namespace cbal {

Rational Configuration::max_multiplier() const {
  Rational best = 0;
  for (const auto& a : multipliers) best = std::max(best, a);
  return best;
}

std::string instance_kind(const Instance& instance) {
  switch (instance.index()) {
    case 0: return "config";
    case 1: return "unrelated";
    case 2: return "related";
    default: return "routing";
  }
}

void validate(const ConfigInstance& instance) {
  if (instance.m < 1) throw ValidationError("config instance needs m >= 1");
  for (std::size_t j = 0; j < instance.requests.size(); ++j) {
    const auto& request = instance.requests[j];
    if (request.configs.empty()) throw ValidationError("request " + std::to_string(j) + " has no configurations");
    for (std::size_t c = 0; c < request.configs.size(); ++c) {
      const auto& config = request.configs[c];
      if (config.multipliers.size() != instance.m) {
        throw ValidationError("request " + std::to_string(j) + " config " + std::to_string(c) + " has " +
                              std::to_string(config.multipliers.size()) + " multipliers, expected " +
                              std::to_string(instance.m));
      }
      for (const auto& a : config.multipliers) {
        if (a < 0) throw ValidationError("negative multiplier in request " + std::to_string(j));
      }
    }
  }
}

void validate(const RelatedInstance& instance) {
  if (instance.speeds.empty()) throw ValidationError("related instance needs at least one machine");
  for (const auto& s : instance.speeds) {
    if (s <= 0) throw ValidationError("machine speeds must be positive, got " + to_string(s));
  }
}

void validate(const UnrelatedInstance& instance) {
  if (instance.m < 1) throw ValidationError("unrelated instance needs m >= 1");
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    if (instance.jobs[j].size() != instance.m) {
      throw ValidationError("job " + std::to_string(j) + " has " + std::to_string(instance.jobs[j].size()) +
                            " machine laws, expected " + std::to_string(instance.m));
    }
  }
}

void validate(const RoutingInstance& instance) {
  if (instance.vertices < 2) throw ValidationError("routing instance needs at least two vertices");
  std::vector<std::vector<std::size_t>> out(instance.vertices);
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    const auto& edge = instance.edges[e];
    if (edge.tail >= instance.vertices || edge.head >= instance.vertices) {
      throw ValidationError("edge " + std::to_string(e) + " references a missing vertex");
    }
    if (edge.capacity <= 0) throw ValidationError("edge " + std::to_string(e) + " has nonpositive capacity");
    out[edge.tail].push_back(edge.head);
  }
  for (std::size_t j = 0; j < instance.requests.size(); ++j) {
    const auto& request = instance.requests[j];
    if (request.source >= instance.vertices || request.sink >= instance.vertices) {
      throw ValidationError("request " + std::to_string(j) + " references a missing vertex");
    }
    if (request.source == request.sink) throw ValidationError("request " + std::to_string(j) + " has source == sink");
    std::vector<bool> seen(instance.vertices, false);
    std::queue<std::size_t> frontier;
    frontier.push(request.source);
    seen[request.source] = true;
    while (!frontier.empty()) {
      std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t w : out[v]) {
        if (!seen[w]) {
          seen[w] = true;
          frontier.push(w);
        }
      }
    }
    if (!seen[request.sink]) {
      throw NoFeasiblePath("request " + std::to_string(j) + ": sink " + std::to_string(request.sink) +
                           " unreachable from source " + std::to_string(request.source));
    }
  }
}

void validate(const Instance& instance) {
  std::visit([](const auto& inst) { validate(inst); }, instance);
}

Rational expected_max_exact(const Configuration& config) { return mean_exact(config.law) * config.max_multiplier(); }

Rational exceptional_max_mean_exact(const Configuration& config, const Rational& tau) {
  Rational a = config.max_multiplier();
  Rational sum = 0;
  if (a == 0) return sum;
  for (const auto& atom : config.law.atoms()) {
    Rational x = a * atom.value;
    if (x >= tau) sum += x * atom.prob;
  }
  return sum;
}

Rational truncated_resource_mean_exact(const Configuration& config, std::size_t resource, const Rational& tau) {
  const Rational& a = config.multipliers.at(resource);
  Rational sum = 0;
  if (a == 0) return sum;
  for (const auto& atom : config.law.atoms()) {
    Rational x = a * atom.value;
    if (x < tau) sum += x * atom.prob;
  }
  return sum;
}

std::vector<Rational> proxy_vector_exact(const Configuration& config, const Rational& tau) {
  std::vector<Rational> x(config.multipliers.size() + 1);
  x[0] = exceptional_max_mean_exact(config, tau);
  for (std::size_t i = 0; i < config.multipliers.size(); ++i) x[i + 1] = truncated_resource_mean_exact(config, i, tau);
  return x;
}

std::vector<double> proxy_vector(const Configuration& config, const TruncationThreshold& tau) {
  auto exact = proxy_vector_exact(config, tau.exact());
  std::vector<double> x(exact.size());
  std::transform(exact.begin(), exact.end(), x.begin(), [](const Rational& r) { return to_double(r); });
  return x;
}

}  // namespace cbal

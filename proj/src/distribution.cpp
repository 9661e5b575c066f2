#include "cbal/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace cbal {

TruncationThreshold::TruncationThreshold(Rational tau) : tau_(std::move(tau)) {
  if (tau_ <= 0) throw ValidationError("truncation threshold must be positive, got " + to_string(tau_));
  value_ = to_double(tau_);
}

TruncationThreshold::TruncationThreshold(double tau) : TruncationThreshold(rational_from_double(tau)) {}

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms) {
  std::map<Rational, Rational> merged;
  for (auto& atom : atoms) {
    if (atom.value < 0) throw ValidationError("negative support value " + to_string(atom.value));
    if (atom.prob < 0 || atom.prob > 1) throw ValidationError("probability out of range: " + to_string(atom.prob));
    if (atom.prob == 0) continue;
    merged[atom.value] += atom.prob;
  }
  if (merged.empty()) throw ValidationError("distribution has empty support");
  Rational total = 0;
  for (const auto& [value, prob] : merged) total += prob;
  if (total != 1) {
    if (std::abs(to_double(total) - 1.0) > 1e-12) {
      throw ValidationError("probabilities sum to " + to_string(total) + ", expected 1");
    }
    for (auto& [value, prob] : merged) prob /= total;
  }
  atoms_.reserve(merged.size());
  double running = 0.0;
  for (auto& [value, prob] : merged) {
    atoms_.push_back({value, prob});
    values_.push_back(to_double(value));
    running += to_double(prob);
    cumulative_.push_back(running);
  }
  cumulative_.back() = 1.0;
}

DiscreteDistribution DiscreteDistribution::point_mass(Rational value) {
  return DiscreteDistribution({{std::move(value), Rational(1)}});
}

DiscreteDistribution DiscreteDistribution::scaled_bernoulli(Rational value, Rational p) {
  return DiscreteDistribution({{Rational(0), Rational(1 - p)}, {std::move(value), std::move(p)}});
}

Rational mean_exact(const DiscreteDistribution& d) {
  Rational sum = 0;
  for (const auto& atom : d.atoms()) sum += atom.value * atom.prob;
  return sum;
}

Rational truncated_mean_exact(const DiscreteDistribution& d, const Rational& tau) {
  Rational sum = 0;
  for (const auto& atom : d.atoms()) {
    if (atom.value < tau) sum += atom.value * atom.prob;
  }
  return sum;
}

Rational exceptional_mean_exact(const DiscreteDistribution& d, const Rational& tau) {
  Rational sum = 0;
  for (const auto& atom : d.atoms()) {
    if (atom.value >= tau) sum += atom.value * atom.prob;
  }
  return sum;
}

double mean(const DiscreteDistribution& d) { return to_double(mean_exact(d)); }

double truncated_mean(const DiscreteDistribution& d, const TruncationThreshold& tau) {
  return to_double(truncated_mean_exact(d, tau.exact()));
}

double exceptional_mean(const DiscreteDistribution& d, const TruncationThreshold& tau) {
  return to_double(exceptional_mean_exact(d, tau.exact()));
}

DiscreteDistribution scale(const DiscreteDistribution& d, const Rational& factor) {
  if (factor <= 0) throw ValidationError("scale factor must be positive");
  std::vector<Atom> atoms;
  atoms.reserve(d.size());
  for (const auto& atom : d.atoms()) atoms.push_back({atom.value * factor, atom.prob});
  return DiscreteDistribution(std::move(atoms));
}

std::size_t sample_index(const DiscreteDistribution& d, CounterRng& rng) {
  double u = rng.uniform01();
  auto cum = d.cumulative();
  auto it = std::upper_bound(cum.begin(), cum.end(), u);
  if (it == cum.end()) return cum.size() - 1;
  return static_cast<std::size_t>(it - cum.begin());
}

double sample(const DiscreteDistribution& d, CounterRng& rng) { return d.values()[sample_index(d, rng)]; }

}  // namespace cbal

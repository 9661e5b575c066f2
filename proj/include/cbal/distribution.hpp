#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cbal/rational.hpp"
#include "cbal/rng.hpp"

namespace cbal {

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Positive truncation threshold tau. Values >= tau are exceptional.
class TruncationThreshold {
 public:
  explicit TruncationThreshold(Rational tau);
  explicit TruncationThreshold(double tau);

  const Rational& exact() const { return tau_; }
  double value() const { return value_; }

 private:
  Rational tau_;
  double value_;
};

struct Atom {
  Rational value;
  Rational prob;

  bool operator==(const Atom&) const = default;
};

/// Finite-support nonnegative random variable. Atoms are sorted by value,
/// values are distinct and probabilities are positive and sum to exactly one.
/// Immutable after construction.
class DiscreteDistribution {
 public:
  /// Validates and canonicalizes: merges duplicate values, drops zero-probability
  /// atoms, sorts by value. A probability total within 1e-12 of one is
  /// renormalized exactly; anything further off throws ValidationError.
  explicit DiscreteDistribution(std::vector<Atom> atoms);

  static DiscreteDistribution point_mass(Rational value);
  /// value * Bernoulli(p): {(0, 1-p), (value, p)}.
  static DiscreteDistribution scaled_bernoulli(Rational value, Rational p);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<const double> cumulative() const { return cumulative_; }

  bool operator==(const DiscreteDistribution& other) const { return atoms_ == other.atoms_; }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

Rational mean_exact(const DiscreteDistribution& d);
Rational truncated_mean_exact(const DiscreteDistribution& d, const Rational& tau);
Rational exceptional_mean_exact(const DiscreteDistribution& d, const Rational& tau);

double mean(const DiscreteDistribution& d);
/// E[X 1{X < tau}].
double truncated_mean(const DiscreteDistribution& d, const TruncationThreshold& tau);
/// E[X 1{X >= tau}].
double exceptional_mean(const DiscreteDistribution& d, const TruncationThreshold& tau);

/// Multiplies every support value by factor > 0.
DiscreteDistribution scale(const DiscreteDistribution& d, const Rational& factor);

/// Index of the atom drawn with one uniform variate.
std::size_t sample_index(const DiscreteDistribution& d, CounterRng& rng);
double sample(const DiscreteDistribution& d, CounterRng& rng);

/// x 1{x >= tau}: the exceptional part of one realized value.
inline Rational exceptional_part(const Rational& x, const Rational& tau) { return x >= tau ? x : Rational(0); }
inline double exceptional_part(double x, double tau) { return x >= tau ? x : 0.0; }

}  // namespace cbal

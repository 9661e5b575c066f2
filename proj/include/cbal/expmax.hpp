#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cbal/distribution.hpp"

namespace cbal {

/// `count` independent copies of one law.
struct TermGroup {
  DiscreteDistribution law;
  std::uint64_t count = 1;
};

/// S_i as a sum of independent terms; the estimator reports E[max_i S_i / divisor_i].
struct SumSpec {
  std::vector<TermGroup> terms;
  double divisor = 1.0;
};

struct ExpMaxEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t trials = 0;
};

/// Monte-Carlo estimate of E[max_i S_i / c_i]. Groups of two-point laws
/// {0, v} are drawn as v * Binomial(count, p).
ExpMaxEstimate estimate_expected_max(const std::vector<SumSpec>& sums, std::size_t trials, std::uint64_t seed);

enum class ExpMaxRegime { kSqrtLog, kLogM, kGeometric };
ExpMaxRegime parse_regime(const std::string& name);
std::string regime_name(ExpMaxRegime regime);

/// kSqrtLog: m sums of m copies of tau Ber(1/m), so E[S_i] = tau.
/// kLogM:    m sums of m copies of tau Ber(ln m / m), so E[S_i] = tau ln m.
/// kGeometric: c_m = 1, c_i = ceil(3/2 c_{i+1}), S_i = tau Bin(4 c_i, 1/4), divisor c_i.
std::vector<SumSpec> regime_sums(ExpMaxRegime regime, std::size_t m, double tau);

/// The test bound for the regime: 8 tau ln m / ln ln m', 8 tau ln m, 8 tau,
/// where m' = max(m, 16) keeps ln ln positive for tiny m.
double regime_bound(ExpMaxRegime regime, std::size_t m, double tau);

}  // namespace cbal

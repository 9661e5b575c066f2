#include "cbal/expmax.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "cbal/rng.hpp"
#include "cbal/simulate.hpp"

namespace cbal {

namespace {

double draw_group(const TermGroup& group, CounterRng& rng) {
  const auto atoms = group.law.atoms();
  if (atoms.size() == 1) return to_double(atoms[0].value) * static_cast<double>(group.count);
  if (atoms.size() == 2 && atoms[0].value == 0) {
    std::binomial_distribution<std::int64_t> binomial(static_cast<std::int64_t>(group.count), to_double(atoms[1].prob));
    return to_double(atoms[1].value) * static_cast<double>(binomial(rng));
  }
  double sum = 0.0;
  for (std::uint64_t k = 0; k < group.count; ++k) sum += sample(group.law, rng);
  return sum;
}

}  // namespace

ExpMaxEstimate estimate_expected_max(const std::vector<SumSpec>& sums, std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate needs at least one trial");
  std::vector<double> maxima(trials, 0.0);
  for (std::size_t t = 0; t < trials; ++t) {
    double best = 0.0;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      CounterRng rng(seed, derive_stream(StreamDomain::kExpectedMax, t, i));
      double s = 0.0;
      for (const auto& group : sums[i].terms) s += draw_group(group, rng);
      best = std::max(best, s / sums[i].divisor);
    }
    maxima[t] = best;
  }
  SampleSummary summary = summarize(maxima);
  return {summary.mean, summary.stderr_, trials};
}

ExpMaxRegime parse_regime(const std::string& name) {
  if (name == "sqrtlog") return ExpMaxRegime::kSqrtLog;
  if (name == "logm") return ExpMaxRegime::kLogM;
  if (name == "geo") return ExpMaxRegime::kGeometric;
  throw std::invalid_argument("unknown regime '" + name + "' (expected sqrtlog, logm or geo)");
}

std::string regime_name(ExpMaxRegime regime) {
  switch (regime) {
    case ExpMaxRegime::kSqrtLog: return "sqrtlog";
    case ExpMaxRegime::kLogM: return "logm";
    default: return "geo";
  }
}

std::vector<SumSpec> regime_sums(ExpMaxRegime regime, std::size_t m, double tau) {
  if (m < 1) throw std::invalid_argument("regime needs m >= 1");
  const Rational t = rational_from_double(tau);
  const double md = static_cast<double>(m);
  std::vector<SumSpec> sums(m);
  switch (regime) {
    case ExpMaxRegime::kSqrtLog:
    case ExpMaxRegime::kLogM: {
      double p = regime == ExpMaxRegime::kSqrtLog ? 1.0 / md : std::min(1.0, std::log(md) / md);
      auto law = p >= 1.0 ? DiscreteDistribution::point_mass(t)
                          : DiscreteDistribution::scaled_bernoulli(t, rational_from_double(p));
      for (auto& s : sums) s.terms.push_back({law, m});
      break;
    }
    case ExpMaxRegime::kGeometric: {
      auto law = DiscreteDistribution::scaled_bernoulli(t, rational(1, 4));
      double c = 1.0;
      for (std::size_t k = m; k-- > 0;) {
        sums[k].terms.push_back({law, static_cast<std::uint64_t>(4.0 * c)});
        sums[k].divisor = c;
        c = std::ceil(1.5 * c);
      }
      break;
    }
  }
  return sums;
}

double regime_bound(ExpMaxRegime regime, std::size_t m, double tau) {
  const double lm = std::log(static_cast<double>(std::max<std::size_t>(m, 2)));
  switch (regime) {
    case ExpMaxRegime::kSqrtLog: {
      double mm = static_cast<double>(std::max<std::size_t>(m, 16));
      return 8.0 * tau * std::log(mm) / std::log(std::log(mm));
    }
    case ExpMaxRegime::kLogM: return 8.0 * tau * lm;
    default: return 8.0 * tau;
  }
}

}  // namespace cbal

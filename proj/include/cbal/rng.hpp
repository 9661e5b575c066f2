#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace cbal {

/// Counter-based generator (Philox4x32-10). The output sequence is a pure
/// function of (seed, stream, counter), so independent streams can be
/// derived for every (trial, request) pair and consumed in any order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound) without modulo bias. bound > 0.
  std::uint64_t uniform_below(std::uint64_t bound);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int available_ = 0;
};

/// Stream domains keep generator, rounding and simulation draws disjoint.
enum class StreamDomain : std::uint64_t {
  kGenerator = 1,
  kRounding = 2,
  kSimulation = 3,
  kExpectedMax = 4,
};

/// Stream id for (domain, trial, item); item < 2^24, trial < 2^36.
std::uint64_t derive_stream(StreamDomain domain, std::uint64_t trial, std::uint64_t item);

}  // namespace cbal

#include "cbal/rng.hpp"

namespace cbal {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

std::array<std::uint32_t, 4> philox_round(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
  std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
  auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
  auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
  return {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

void CounterRng::refill() {
  std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                                      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)};
  for (int round = 0; round < 10; ++round) {
    ctr = philox_round(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  block_ = ctr;
  available_ = 4;
  ++counter_;
}

CounterRng::result_type CounterRng::operator()() {
  if (available_ < 2) refill();
  std::uint64_t hi = block_[static_cast<std::size_t>(4 - available_)];
  std::uint64_t lo = block_[static_cast<std::size_t>(5 - available_)];
  available_ -= 2;
  return (hi << 32) | lo;
}

double CounterRng::uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

std::uint64_t CounterRng::uniform_below(std::uint64_t bound) {
  std::uint64_t limit = max() - max() % bound;
  for (;;) {
    std::uint64_t x = (*this)();
    if (x < limit) return x % bound;
  }
}

std::uint64_t derive_stream(StreamDomain domain, std::uint64_t trial, std::uint64_t item) {
  return (static_cast<std::uint64_t>(domain) << 60) | ((trial & ((1ULL << 36) - 1)) << 24) | (item & ((1ULL << 24) - 1));
}

}  // namespace cbal

#include "orthosym/rng.hpp"

namespace orthosym {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CounterEngine::CounterEngine(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(splitmix64(seed + kGolden) ^ splitmix64(stream * kGolden + 0x632BE59BD9B4E019ULL))) {}

CounterEngine::result_type CounterEngine::operator()() {
  ++counter_;
  return splitmix64(key_ + counter_ * kGolden);
}

} // namespace orthosym

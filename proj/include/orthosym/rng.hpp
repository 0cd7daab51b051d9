#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace orthosym {

// Counter-based 64-bit generator: output k of stream (seed, stream) is
// splitmix64(key + k * golden), with key derived from (seed, stream). Streams
// are independent and reproducible, which makes sharded Monte Carlo deterministic.
// Satisfies UniformRandomBitGenerator.
class CounterEngine {
public:
  using result_type = std::uint64_t;

  explicit CounterEngine(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  std::uint64_t counter() const { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t z);

// Engine plus the distributions the samplers need.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(seed, stream) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  CounterEngine& engine() { return engine_; }

private:
  CounterEngine engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

} // namespace orthosym

#pragma once

#include <cstdint>
#include <random>

namespace bgshrink {

/// Stream tags keep the draws of independent sampling stages apart even when
/// they share a (seed, trial) pair.
enum class Stream : std::uint64_t {
  support = 1,
  coefficients = 2,
  noise = 3,
  dictionary = 4,
  posterior = 5,
  test = 99,
};

/// Identifies one reproducible random stream: a global seed plus a trial
/// index. Implicitly constructible from a bare seed.
struct SeedKey {
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;

  SeedKey() = default;
  SeedKey(std::uint64_t s, std::uint64_t t = 0) : seed(s), trial(t) {}  // NOLINT
};

/// Deterministic generator keyed by (seed, trial, stream). Keys are mixed
/// with splitmix64 so neighbouring trials get decorrelated engine states.
class Rng {
 public:
  Rng(SeedKey key, Stream stream);

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)
  double normal(double stddev) { return stddev * normal(); }
  bool bernoulli(double p) { return uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace bgshrink

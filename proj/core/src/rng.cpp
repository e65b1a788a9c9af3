#include "bgshrink/rng.hpp"

namespace bgshrink {

std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(SeedKey key, Stream stream)
    : engine_(mix(mix(mix(key.seed) ^ key.trial) ^ static_cast<std::uint64_t>(stream))) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() { return normal_(engine_); }

}  // namespace bgshrink

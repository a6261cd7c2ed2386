#pragma once

#include <cstdint>

namespace adl {

// splitmix64: deterministic across platforms, unlike the distribution
// adapters in <random>.  All sampling in the library goes through this.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., k-1}, unbiased (rejection sampling).
  uint64_t below(uint64_t k) {
    if (k == 0) return 0;
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % k);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % k;
  }

  bool coin() { return (next() & 1) != 0; }

  // Stable stream derivation: one master seed fans out into per-(stream,
  // index) substreams without correlation between them.
  static uint64_t derive(uint64_t seed, uint64_t stream, uint64_t index = 0) {
    Rng mix(seed ^ (0xd1b54a32d192ed03ull * (stream + 1)) ^
            (0x8cb92ba72f3d8dd7ull * (index + 1)));
    return mix.next();
  }

  // Stateless hash of a byte string; used for descriptor-keyed decisions.
  static uint64_t hash_bytes(const void* data, uint64_t len, uint64_t seed) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    uint64_t h = seed ^ (len * 0x9e3779b97f4a7c15ull);
    for (uint64_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ull;
      h ^= h >> 29;
    }
    Rng mix(h);
    return mix.next();
  }

private:
  uint64_t state_;
};

}  // namespace adl

#pragma once

#include <cstdint>

namespace coxcert {

// splitmix64. Standard-library distributions are implementation-defined, and
// sampled certificates must replay byte-identically everywhere, so sampling
// goes through this fixed generator.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform-ish in [0, n); the modulo bias is irrelevant at sampling scale.
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }

 private:
  std::uint64_t state_;
};

}  // namespace coxcert

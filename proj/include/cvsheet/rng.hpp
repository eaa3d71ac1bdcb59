#pragma once

#include <cstdint>

namespace cvsheet {

// splitmix64. Chosen over std::mt19937_64 because the standard engines do not
// pin down seeding across implementations, and runs here must be reproducible
// bit-for-bit from the seed recorded in a config file. The constants below are
// part of that contract; a reimplementation must match them.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 significant bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace cvsheet

#pragma once

#include <cstdint>
#include <string_view>

#include <gmpxx.h>

namespace kron {

// Splittable counter-based generator: each output is a SplitMix64-style
// mix of (key, counter), so derived streams never share state. Recorded in
// experiment outputs as algorithm id "sm64ctr-v1".
class Rng {
 public:
  static constexpr std::string_view kAlgorithmId = "sm64ctr-v1";

  explicit Rng(std::uint64_t seed) : key_(seed) {}

  std::uint64_t seed() const { return key_; }

  std::uint64_t next() { return mix(key_, counter_++); }

  // Independent stream for e.g. a trial index.
  Rng derive(std::uint64_t stream) const {
    return Rng(mix(key_, 0x8e3c5a1d6b29f04dULL ^ stream));
  }

  // Uniform in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, bound) for big-integer bounds, word-wise rejection.
  mpz_class below(const mpz_class& bound);

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t mix(std::uint64_t key, std::uint64_t counter);

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace kron

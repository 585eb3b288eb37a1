#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "trio/bits.hpp"

namespace trio {

/// Seedable randomness source injected everywhere a protocol step draws
/// coins. Satisfies UniformRandomBitGenerator so std distributions work.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  bool bit() { return (engine_() >> 63) != 0; }
  BitString bits(std::size_t len);
  /// Uniform in [0, bound). bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Expands a base seed into an independent sub-seed for a labelled consumer
/// ("party:1", "strategy", "trial:17", ...). FNV-1a over the label, mixed
/// with the base through splitmix64.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

}  // namespace trio

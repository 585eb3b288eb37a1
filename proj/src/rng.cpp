#include "trio/rng.hpp"

#include <stdexcept>

namespace trio {

BitString Rng::bits(std::size_t len) {
  BitString out(len);
  auto words = out.words();
  for (auto& w : words) w = engine_();
  if (len % 64 != 0 && !words.empty()) words.back() &= (std::uint64_t{1} << (len % 64)) - 1;
  return out;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be nonzero");
  return std::uniform_int_distribution<std::uint64_t>(0, bound - 1)(engine_);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t base, std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : label) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(splitmix64(base) ^ h);
}

}  // namespace trio

#include "lupi/rng.hpp"

#include <algorithm>

namespace lupi {

namespace {
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGoldenGamma;
  return mix64(state_);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ (stream * kGoldenGamma));
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 sm(substream_seed(seed, stream));
  for (auto& word : s_) word = sm.next();
}

std::uint64_t Xoshiro256StarStar::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256StarStar::next_unit() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

int sample_number(std::span<const double> cdf, double u) {
  // First k with u <= cdf[k].
  auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
  if (it == cdf.end()) --it;
  return static_cast<int>(it - cdf.begin()) + 1;
}

}  // namespace lupi

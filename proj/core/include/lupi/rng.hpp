#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace lupi {

/// SplitMix64 (Steele, Lea, Flood 2014). Used only to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();

 private:
  std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman, Vigna 2018).
///
/// Seeding: the 256-bit state is four consecutive SplitMix64 outputs started
/// from substream_seed(seed, stream). Doubles are ((x >> 11) + 1) * 2^-53,
/// which lies in (0, 1].
class Xoshiro256StarStar {
 public:
  static constexpr std::string_view kName = "xoshiro256**/splitmix64";

  Xoshiro256StarStar(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next();
  double next_unit();

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// SplitMix64 finalizer of seed ^ (stream * golden gamma).
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// Inverse-CDF draw over right-closed intervals (cdf[k-1], cdf[k]] for u in (0, 1].
/// Returns a 1-based number. `cdf` must be non-decreasing with cdf.back() == 1.
int sample_number(std::span<const double> cdf, double u);

}  // namespace lupi

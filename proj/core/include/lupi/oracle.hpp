#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lupi/game.hpp"

namespace lupi {

struct OracleLimits {
  /// Enumeration runs over C(2n-2, n-1) occupancy vectors; n above this is refused.
  int n_max = 10;
};

/// c_i by direct enumeration of occupancy vectors (k_1..k_n), sum k = n-1,
/// weighted by multinomial(n-1; k) prod p_j^k_j. Keeps vectors with k_i = 0
/// and k_j != 1 for every j < i.
double exact_win_prob(int i, const Strategy& p, const OracleLimits& limits = {});

/// Total weight of every occupancy vector, without filtering. Equals 1 for a
/// normalized strategy.
double occupancy_total(const Strategy& p, const OracleLimits& limits = {});

struct SimulationStats {
  std::int64_t rounds = 0;
  /// Per chosen number (index i-1): times the observed player picked i.
  std::vector<std::int64_t> choice_counts;
  /// Per chosen number: wins while holding i.
  std::vector<std::int64_t> win_counts;
  /// win_counts / choice_counts; empty when i was never chosen.
  std::vector<std::optional<double>> est_ci;
  std::vector<std::optional<double>> std_err;
  double win_rate = 0.0;
  double win_rate_std_err = 0.0;
  std::uint64_t seed = 0;
  int shard_count = 1;
  std::string generator;
};

/// Plays `rounds` independent games: the observed player draws from `pi`,
/// the n-1 opponents from `p`. Shard s draws from substream (seed, s) and
/// plays a contiguous share of the rounds; the merged counts depend only on
/// (seed, shards).
SimulationStats simulate(const Strategy& pi, const Strategy& p, std::int64_t rounds,
                         std::uint64_t seed, int shards = 1);

}  // namespace lupi

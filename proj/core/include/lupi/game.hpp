#pragma once

#include <optional>
#include <span>
#include <vector>

namespace lupi {

/// Number of players in a round; also the count of choosable integers 1..n.
class GameSpec {
 public:
  static constexpr int kMinPlayers = 3;

  explicit GameSpec(int n);
  int n() const { return n_; }

 private:
  int n_;
};

/// Throws DomainError unless n >= 3.
void require_game_size(int n);

/// A mixed strategy over the numbers 1..n. Immutable once built.
///
/// Construction rejects entries outside [0, 1] and totals that miss 1 by
/// more than kRenormalizeLimit. Totals within that limit but further than
/// kSumTolerance from 1 are rescaled.
class Strategy {
 public:
  static constexpr double kSumTolerance = 1e-12;
  static constexpr double kRenormalizeLimit = 1e-9;

  explicit Strategy(std::vector<double> probs);

  int n() const { return static_cast<int>(probs_.size()); }

  /// Probability of choosing `number` (1-based).
  double prob(int number) const;
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  std::vector<double> probs_;
};

/// Point mass on a single number (1-based).
Strategy make_point_mass(int n, int number);
Strategy make_uniform(int n);
/// (1/2, 1/2, 0, ..., 0).
Strategy make_zeng(int n);
/// Dyadic weights p_i = 2^-i for i < n and p_n = 2^(1-n).
Strategy make_flitney(int n);

/// One realized round: choices[k] is the number (1..n) picked by player k+1,
/// where n is the number of players.
class ChoiceProfile {
 public:
  explicit ChoiceProfile(std::vector<int> choices);

  int players() const { return static_cast<int>(choices_.size()); }
  std::span<const int> choices() const { return choices_; }

 private:
  std::vector<int> choices_;
};

struct Winner {
  int player;  // 1-based
  int number;

  friend bool operator==(const Winner&, const Winner&) = default;
};

/// Holder of the smallest number picked by exactly one player, if any.
std::optional<Winner> lowest_unique_winner(const ChoiceProfile& profile);

}  // namespace lupi

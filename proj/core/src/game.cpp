#include "lupi/game.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "lupi/errors.hpp"

namespace lupi {

void require_game_size(int n) {
  if (n < GameSpec::kMinPlayers) {
    throw DomainError("game needs at least 3 players, got n=" + std::to_string(n));
  }
}

GameSpec::GameSpec(int n) : n_(n) { require_game_size(n); }

Strategy::Strategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) {
    throw ValidationError("strategy must have at least one entry");
  }
  for (std::size_t k = 0; k < probs_.size(); ++k) {
    const double v = probs_[k];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw ValidationError("strategy entry " + std::to_string(k + 1) + " = " + std::to_string(v) +
                            " outside [0, 1]");
    }
  }
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  const double dev = std::abs(total - 1.0);
  if (dev > kRenormalizeLimit) {
    throw ValidationError("strategy sums to " + std::to_string(total) + ", not 1");
  }
  if (dev > kSumTolerance) {
    for (double& v : probs_) v /= total;
  }
}

double Strategy::prob(int number) const {
  if (number < 1 || number > n()) {
    throw DomainError("number " + std::to_string(number) + " outside 1.." + std::to_string(n()));
  }
  return probs_[static_cast<std::size_t>(number - 1)];
}

Strategy make_point_mass(int n, int number) {
  if (n < 1 || number < 1 || number > n) {
    throw DomainError("point mass on " + std::to_string(number) + " outside 1.." + std::to_string(n));
  }
  std::vector<double> probs(static_cast<std::size_t>(n), 0.0);
  probs[static_cast<std::size_t>(number - 1)] = 1.0;
  return Strategy(std::move(probs));
}

Strategy make_uniform(int n) {
  require_game_size(n);
  return Strategy(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

Strategy make_zeng(int n) {
  require_game_size(n);
  std::vector<double> probs(static_cast<std::size_t>(n), 0.0);
  probs[0] = 0.5;
  probs[1] = 0.5;
  return Strategy(std::move(probs));
}

Strategy make_flitney(int n) {
  require_game_size(n);
  std::vector<double> probs(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) probs[static_cast<std::size_t>(i - 1)] = std::ldexp(1.0, -i);
  probs.back() = std::ldexp(1.0, 1 - n);
  return Strategy(std::move(probs));
}

ChoiceProfile::ChoiceProfile(std::vector<int> choices) : choices_(std::move(choices)) {
  const int n = players();
  if (n == 0) throw ValidationError("empty choice profile");
  for (int k = 0; k < n; ++k) {
    const int c = choices_[static_cast<std::size_t>(k)];
    if (c < 1 || c > n) {
      throw ValidationError("player " + std::to_string(k + 1) + " chose " + std::to_string(c) +
                            ", outside 1.." + std::to_string(n));
    }
  }
}

std::optional<Winner> lowest_unique_winner(const ChoiceProfile& profile) {
  const auto choices = profile.choices();
  std::vector<int> counts(static_cast<std::size_t>(profile.players()) + 1, 0);
  for (int c : choices) ++counts[static_cast<std::size_t>(c)];

  for (int number = 1; number < static_cast<int>(counts.size()); ++number) {
    if (counts[static_cast<std::size_t>(number)] != 1) continue;
    for (std::size_t k = 0; k < choices.size(); ++k) {
      if (choices[k] == number) return Winner{static_cast<int>(k) + 1, number};
    }
  }
  return std::nullopt;
}

}  // namespace lupi

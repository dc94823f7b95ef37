#include "lupi/oracle.hpp"

#include <cmath>
#include <numeric>
#include <thread>

#include "lupi/errors.hpp"
#include "lupi/rng.hpp"

namespace lupi {

namespace {

void check_budget(int n, const OracleLimits& limits) {
  require_game_size(n);
  if (n > limits.n_max) {
    throw ResourceError("occupancy enumeration for n=" + std::to_string(n) + " exceeds oracle budget n<=" +
                        std::to_string(limits.n_max));
  }
}

// Visits every occupancy vector of `balls` opponents over `p.size()` numbers
// with its probability multinomial(balls; k) prod p_j^k_j.
template <class Visit>
void for_each_occupancy(std::span<const double> p, int balls, const Visit& visit) {
  const std::size_t parts = p.size();
  std::vector<int> counts(parts, 0);
  std::vector<double> fact(static_cast<std::size_t>(balls) + 1, 1.0);
  for (int k = 1; k <= balls; ++k) fact[static_cast<std::size_t>(k)] = fact[static_cast<std::size_t>(k - 1)] * k;

  // weight carries fact(balls) / prod k_j! * prod p_j^k_j for the parts placed so far.
  auto recurse = [&](auto&& self, std::size_t pos, int left, double weight) -> void {
    if (pos + 1 == parts) {
      counts[pos] = left;
      visit(counts, weight * std::pow(p[pos], left) / fact[static_cast<std::size_t>(left)]);
      return;
    }
    double pk = 1.0;
    for (int k = 0; k <= left; ++k) {
      counts[pos] = k;
      self(self, pos + 1, left - k, weight * pk / fact[static_cast<std::size_t>(k)]);
      pk *= p[pos];
    }
  };
  recurse(recurse, 0, balls, fact[static_cast<std::size_t>(balls)]);
}

struct Sum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    carry += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

double exact_win_prob(int i, const Strategy& p, const OracleLimits& limits) {
  const int n = p.n();
  check_budget(n, limits);
  if (i < 1 || i > n) throw DomainError("index i=" + std::to_string(i) + " outside 1.." + std::to_string(n));
  const auto chosen = static_cast<std::size_t>(i - 1);
  Sum total;
  for_each_occupancy(p.probs(), n - 1, [&](const std::vector<int>& k, double w) {
    if (k[chosen] != 0) return;
    for (std::size_t j = 0; j < chosen; ++j) {
      if (k[j] == 1) return;
    }
    total.add(w);
  });
  return total.value();
}

double occupancy_total(const Strategy& p, const OracleLimits& limits) {
  check_budget(p.n(), limits);
  Sum total;
  for_each_occupancy(p.probs(), p.n() - 1, [&](const std::vector<int>&, double w) { total.add(w); });
  return total.value();
}

namespace {

struct ShardCounts {
  std::vector<std::int64_t> choices;
  std::vector<std::int64_t> wins;
};

std::vector<double> cumulative(const Strategy& s) {
  std::vector<double> cdf(static_cast<std::size_t>(s.n()));
  std::partial_sum(s.probs().begin(), s.probs().end(), cdf.begin());
  cdf.back() = 1.0;
  return cdf;
}

ShardCounts play_shard(const std::vector<double>& pi_cdf, const std::vector<double>& p_cdf, int n,
                       std::int64_t rounds, std::uint64_t seed, int shard) {
  ShardCounts out{std::vector<std::int64_t>(static_cast<std::size_t>(n), 0),
                  std::vector<std::int64_t>(static_cast<std::size_t>(n), 0)};
  Xoshiro256StarStar gen(seed, static_cast<std::uint64_t>(shard));
  std::vector<int> opponents(static_cast<std::size_t>(n) + 1);
  for (std::int64_t r = 0; r < rounds; ++r) {
    const int mine = sample_number(pi_cdf, gen.next_unit());
    std::fill(opponents.begin(), opponents.end(), 0);
    for (int k = 1; k < n; ++k) ++opponents[static_cast<std::size_t>(sample_number(p_cdf, gen.next_unit()))];

    ++out.choices[static_cast<std::size_t>(mine - 1)];
    bool wins = opponents[static_cast<std::size_t>(mine)] == 0;
    for (int j = 1; wins && j < mine; ++j) wins = opponents[static_cast<std::size_t>(j)] != 1;
    if (wins) ++out.wins[static_cast<std::size_t>(mine - 1)];
  }
  return out;
}

}  // namespace

SimulationStats simulate(const Strategy& pi, const Strategy& p, std::int64_t rounds, std::uint64_t seed,
                         int shards) {
  const int n = p.n();
  require_game_size(n);
  if (pi.n() != n) throw DomainError("strategies cover different n");
  if (rounds < 1) throw DomainError("rounds must be >= 1");
  if (shards < 1) throw DomainError("shards must be >= 1");

  const auto pi_cdf = cumulative(pi);
  const auto p_cdf = cumulative(p);

  std::vector<ShardCounts> parts(static_cast<std::size_t>(shards));
  {
    std::vector<std::jthread> pool;
    for (int s = 0; s < shards; ++s) {
      const std::int64_t share = rounds / shards + (s < rounds % shards ? 1 : 0);
      pool.emplace_back([&, s, share] { parts[static_cast<std::size_t>(s)] = play_shard(pi_cdf, p_cdf, n, share, seed, s); });
    }
  }

  SimulationStats st;
  st.rounds = rounds;
  st.seed = seed;
  st.shard_count = shards;
  st.generator = std::string(Xoshiro256StarStar::kName);
  st.choice_counts.assign(static_cast<std::size_t>(n), 0);
  st.win_counts.assign(static_cast<std::size_t>(n), 0);
  for (const auto& part : parts) {
    for (std::size_t k = 0; k < part.choices.size(); ++k) {
      st.choice_counts[k] += part.choices[k];
      st.win_counts[k] += part.wins[k];
    }
  }

  std::int64_t total_wins = 0;
  for (std::size_t k = 0; k < st.win_counts.size(); ++k) {
    total_wins += st.win_counts[k];
    if (st.choice_counts[k] == 0) {
      st.est_ci.emplace_back();
      st.std_err.emplace_back();
      continue;
    }
    const double chosen = static_cast<double>(st.choice_counts[k]);
    const double est = static_cast<double>(st.win_counts[k]) / chosen;
    st.est_ci.emplace_back(est);
    st.std_err.emplace_back(std::sqrt(est * (1.0 - est) / chosen));
  }
  st.win_rate = static_cast<double>(total_wins) / static_cast<double>(rounds);
  st.win_rate_std_err = std::sqrt(st.win_rate * (1.0 - st.win_rate) / static_cast<double>(rounds));
  return st;
}

}  // namespace lupi

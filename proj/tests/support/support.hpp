#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "lupi/game.hpp"
#include "lupi/polynomial.hpp"

namespace lupi::test {

// Probability that a focal player on `number` wins, by walking every
// opponent profile in 1..n^(n-1). Shares no code with the library.
inline double brute_force_ci(int number, const std::vector<double>& p) {
  const int n = static_cast<int>(p.size());
  const int opponents = n - 1;
  std::vector<int> pick(static_cast<std::size_t>(opponents), 0);
  double total = 0.0;
  for (;;) {
    std::vector<int> count(static_cast<std::size_t>(n), 0);
    double weight = 1.0;
    for (int k : pick) {
      ++count[static_cast<std::size_t>(k)];
      weight *= p[static_cast<std::size_t>(k)];
    }
    ++count[static_cast<std::size_t>(number - 1)];
    int lowest = -1;
    for (int v = 0; v < n; ++v) {
      if (count[static_cast<std::size_t>(v)] == 1) {
        lowest = v;
        break;
      }
    }
    if (lowest == number - 1) total += weight;
    int pos = 0;
    while (pos < opponents && ++pick[static_cast<std::size_t>(pos)] == n) pick[static_cast<std::size_t>(pos++)] = 0;
    if (pos == opponents) break;
  }
  return total;
}

inline std::vector<double> random_simplex_point(int n, std::mt19937_64& gen) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> p(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& v : p) sum += (v = exp1(gen));
  for (double& v : p) v /= sum;
  return p;
}

// Sparse terms with total degree <= 5 and small exact coefficients.
inline SparsePolynomial random_polynomial(int n, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> terms(1, 8);
  std::uniform_int_distribution<unsigned> expo(0, 5);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  SparsePolynomial q(n);
  const int count = terms(gen);
  for (int t = 0; t < count; ++t) {
    Exponents e(static_cast<std::size_t>(n), 0);
    unsigned budget = 5;
    for (auto& x : e) {
      x = std::min(expo(gen), budget);
      budget -= x;
    }
    Rational c(num(gen), den(gen));
    c.canonicalize();
    q.add_term(e, c);
  }
  return q;
}

}  // namespace lupi::test

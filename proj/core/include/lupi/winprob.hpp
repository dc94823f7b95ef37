#pragma once

#include <span>
#include <vector>

#include "lupi/game.hpp"

namespace lupi {

struct EvalOptions {
  /// Largest allowed i - 1 (subset enumeration over p_1..p_{i-1}).
  int subset_cap = 25;
  /// Worker threads for large subset sums; 0 picks hardware concurrency.
  /// The result is bitwise identical for every thread count.
  unsigned threads = 0;
};

/// c_1..c_n at a strategy. values[i-1] = c_i.
struct WinProbVector {
  std::vector<double> values;

  int n() const { return static_cast<int>(values.size()); }
  /// 1-based access.
  double operator()(int i) const { return values.at(static_cast<std::size_t>(i - 1)); }
};

struct PayoffReport {
  double w = 0.0;
  WinProbVector per_number;
};

/// Probability that the observed player wins by choosing i while n-1
/// opponents draw independently from `prefix`.
///
/// Only p_1..p_i are read: the opponents' mass outside {1..i} enters as
/// 1 - p_i - sum_S p_j, so `prefix` needs at least i entries and the caller
/// asserts the full strategy is normalized. Inclusion-exclusion over subsets
/// S of {1..i-1}:
///
///   c_i = sum_S (-1)^|S| (n-1)_|S| prod_{j in S} p_j (1 - p_i - sum_{j in S} p_j)^(n-1-|S|)
///
/// where (n-1)_k is the falling factorial.
double win_prob_prefix(int i, std::span<const double> prefix, int n, const EvalOptions& opts = {});

double win_prob(int i, const Strategy& p, const EvalOptions& opts = {});

/// Partial derivatives of the prefix form above with respect to p_1..p_i.
/// Returns i entries; c_i does not depend on p_j for j > i.
std::vector<double> win_prob_gradient_prefix(int i, std::span<const double> prefix, int n,
                                             const EvalOptions& opts = {});

/// Same as the prefix form, padded with zeros to length n.
std::vector<double> win_prob_gradient(int i, const Strategy& p, const EvalOptions& opts = {});

WinProbVector win_prob_vector(const Strategy& p, const EvalOptions& opts = {});

/// W(pi; p) = sum_i c_i(p) pi_i.
PayoffReport expected_payoff(const Strategy& pi, const Strategy& p, const EvalOptions& opts = {});

/// W(p; p).
double symmetric_payoff(const Strategy& p, const EvalOptions& opts = {});

/// Large-n limit of c_i under uniform play: e^-1 (1 - e^-1)^(i-1).
double uniform_asymptotic_ci(int i);

}  // namespace lupi

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lupi/game.hpp"
#include "lupi/winprob.hpp"

namespace lupi {

// ---------------------------------------------------------------------------
// Simultaneous Newton solve of c_i(p) = c_n(p), i = 1..n-1.

struct NewtonOptions {
  double tol = 1e-12;
  int max_iter = 200;
  /// Largest n accepted; c_n costs 2^(n-1) subset terms.
  int n_max = 20;
  EvalOptions eval;
};

struct NESolution {
  Strategy strategy;
  double c_ne = 0.0;
  /// max_i |c_i - c_n|
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton from the uniform point. The unknowns are p_1..p_{n-1} with
/// p_n = 1 - sum; steps are halved until the iterate stays inside the open
/// simplex and the residual decreases. Throws ConvergenceError if the step
/// shrinks below 2^-30 before the tolerance is met.
NESolution solve_ne(int n, const NewtonOptions& opts = {});

// ---------------------------------------------------------------------------
// Sequential procedure at a fixed payoff guess c0.

enum class RootStatus { kRealRoot, kNoRealRoot };

struct SequentialEntry {
  int i = 0;
  std::optional<double> p;
  RootStatus status = RootStatus::kRealRoot;
  /// |c_i - c0| at the root, or its minimum over the bracket when there is no root.
  double residual = 0.0;
};

struct SequentialResult {
  double c0 = 0.0;
  std::vector<SequentialEntry> entries;
  double prefix_sum = 0.0;

  /// Every produced entry has a real root.
  bool all_real() const;
  /// Found p_1..p_k (stops at the first missing root).
  std::vector<double> found() const;
};

/// Grid points used to scan (0, 1 - prefix) for a sign change of c_i - c0.
inline constexpr int kSequentialGrid = 1024;

/// p_1 = 1 - c0^(1/(n-1)); each later p_i is the smallest root of
/// c_i(p_1..p_i) = c0 inside (0, 1 - prefix_sum). Stops at depth or at the
/// first index with no sign change.
SequentialResult sequential_solve(int n, double c0, int depth, const EvalOptions& eval = {});

struct CneResult {
  double c_ne = 0.0;
  /// p_1..p_{n-1} from the sequential roots, p_n = 1 - sum of the others.
  Strategy strategy;
  /// |sum of all n sequential roots - 1| at c_ne.
  double sum_deviation = 0.0;
  int iterations = 0;
};

/// Bisects c0 on the self-consistency signal of a depth-n sequential solve.
/// Throws ConvergenceError (with the bracket trace in the message) when the
/// signal is not monotone across the initial bracket.
CneResult find_cne_sequential(int n, double tol = 1e-10, const EvalOptions& eval = {});

struct C0Interval {
  double lower = 0.0;
  double upper = 0.0;
  int depth = 0;
};

/// lower: smallest c0 whose depth-j sequential solve exists with sum_{i<=j} p_i <= 1.
/// upper: largest c0 with sum_{i<=j} p_i + (n-j) p_j >= 1.
C0Interval bound_c0(int n, int depth, double tol = 1e-10, const EvalOptions& eval = {});

// ---------------------------------------------------------------------------
// Best symmetric strategy and the c_1 = c_2 ordering check.

struct BestSymmetricOptions {
  int random_starts = 10;
  std::uint64_t seed = 12345;
  int max_iter = 2000;
  double step_tol = 1e-13;
  double fd_step = 1e-7;
  EvalOptions eval;
};

struct BestSymmetricResult {
  Strategy strategy;
  double w = 0.0;
  /// Iterations spent by the winning start.
  int iterations = 0;
  bool converged = false;
  int starts = 0;
};

/// Projected-gradient ascent of W(p; p) on the simplex from the uniform point
/// and `random_starts` random interior points. Returns the best start.
BestSymmetricResult best_symmetric(int n, const BestSymmetricOptions& opts = {});

/// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> v);

/// (1-p_2)^(n-1) - (1-p_1)^(n-1) == (n-1) p_1 (1-p_1-p_2)^(n-2) within 1e-9, and p_2 < p_1.
bool verify_ordering_inequality(const Strategy& p);

}  // namespace lupi

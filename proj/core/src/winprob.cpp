#include "lupi/winprob.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "lupi/errors.hpp"

namespace lupi {

namespace {

// Neumaier's compensated summation.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

// Subsets of {1..i-1} are split into 2^kHeadBits-or-fewer blocks by the
// membership of the first variables. Each block is reduced on its own and
// block totals are combined in block order, so the result never depends on
// how blocks are spread over threads.
constexpr int kHeadBits = 10;
constexpr int kParallelMinVars = 16;

struct SubsetProblem {
  int i;                       // chosen number, 1-based
  int n;                       // players
  std::span<const double> p;   // p_1..p_i (at least)
  int vars() const { return i - 1; }
  double p_i() const { return p[static_cast<std::size_t>(i - 1)]; }
};

void check_args(int i, std::span<const double> prefix, int n, const EvalOptions& opts) {
  require_game_size(n);
  if (i < 1 || i > n) {
    throw DomainError("index i=" + std::to_string(i) + " outside 1.." + std::to_string(n));
  }
  if (static_cast<int>(prefix.size()) < i) {
    throw DomainError("need p_1..p_" + std::to_string(i) + ", got " + std::to_string(prefix.size()) +
                      " entries");
  }
  if (i - 1 > opts.subset_cap) {
    throw ResourceError("c_" + std::to_string(i) + " needs 2^" + std::to_string(i - 1) +
                        " subset terms, above subset cap " + std::to_string(opts.subset_cap));
  }
}

unsigned worker_count(const EvalOptions& opts, int vars, std::size_t blocks) {
  if (vars < kParallelMinVars) return 1;
  unsigned t = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  return static_cast<unsigned>(std::min<std::size_t>(t, blocks));
}

// Runs reduce_block(b) for every block b, storing into results[b].
template <class Result, class Fn>
void run_blocks(std::vector<Result>& results, unsigned workers, const Fn& reduce_block) {
  const std::size_t blocks = results.size();
  if (workers <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) results[b] = reduce_block(b);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t b = w; b < blocks; b += workers) results[b] = reduce_block(b);
    });
  }
}

// Running state of one partial subset S.
struct SubsetState {
  double coef = 1.0;   // (-1)^|S| (n-1)_|S| prod_{j in S} p_j
  double signed_ff = 1.0;  // (-1)^|S| (n-1)_|S|
  double mass = 0.0;   // sum_{j in S} p_j
  int size = 0;

  SubsetState include(const SubsetProblem& pb, int j) const {
    const double pj = pb.p[static_cast<std::size_t>(j)];
    const double factor = -static_cast<double>(pb.n - 1 - size);
    return {coef * factor * pj, signed_ff * factor, mass + pj, size + 1};
  }
};

SubsetState head_state(const SubsetProblem& pb, std::size_t block, int head) {
  SubsetState s;
  for (int j = 0; j < head; ++j) {
    if (block & (std::size_t{1} << j)) s = s.include(pb, j);
  }
  return s;
}

void sum_tail(const SubsetProblem& pb, int j, const SubsetState& s, CompensatedSum& acc) {
  if (j == pb.vars()) {
    const double rest = 1.0 - pb.p_i() - s.mass;
    acc.add(s.coef * std::pow(rest, pb.n - 1 - s.size));
    return;
  }
  sum_tail(pb, j + 1, s, acc);
  const SubsetState with = s.include(pb, j);
  if (with.coef != 0.0) sum_tail(pb, j + 1, with, acc);
}

// Gradient accumulator: d/dp_1..d/dp_i.
struct GradientAcc {
  std::vector<CompensatedSum> parts;
};

void grad_tail(const SubsetProblem& pb, int j, const SubsetState& s, std::vector<int>& members,
               GradientAcc& acc) {
  if (j == pb.vars()) {
    const int e = pb.n - 1 - s.size;
    const double rest = 1.0 - pb.p_i() - s.mass;
    const double rest_e = std::pow(rest, e);
    const double d_rest = e == 0 ? 0.0 : s.coef * e * std::pow(rest, e - 1);
    // d/dp_i: rest carries -p_i.
    acc.parts[static_cast<std::size_t>(pb.i - 1)].add(-d_rest);
    // d/dp_j for j in S: product rule on p_j and on rest.
    const std::size_t m = members.size();
    std::vector<double> prefix(m + 1, 1.0);
    for (std::size_t k = 0; k < m; ++k) prefix[k + 1] = prefix[k] * pb.p[static_cast<std::size_t>(members[k])];
    double suffix = 1.0;
    for (std::size_t k = m; k-- > 0;) {
      const double others = prefix[k] * suffix;
      acc.parts[static_cast<std::size_t>(members[k])].add(s.signed_ff * others * rest_e - d_rest);
      suffix *= pb.p[static_cast<std::size_t>(members[k])];
    }
    return;
  }
  grad_tail(pb, j + 1, s, members, acc);
  members.push_back(j);
  grad_tail(pb, j + 1, s.include(pb, j), members, acc);
  members.pop_back();
}

}  // namespace

double win_prob_prefix(int i, std::span<const double> prefix, int n, const EvalOptions& opts) {
  check_args(i, prefix, n, opts);
  const SubsetProblem pb{i, n, prefix};
  const int head = std::min(pb.vars(), kHeadBits);
  std::vector<double> block_sums(std::size_t{1} << head);
  run_blocks(block_sums, worker_count(opts, pb.vars(), block_sums.size()), [&](std::size_t b) {
    const SubsetState s = head_state(pb, b, head);
    CompensatedSum acc;
    if (s.coef != 0.0) sum_tail(pb, head, s, acc);
    return acc.value();
  });
  CompensatedSum total;
  for (double v : block_sums) total.add(v);
  return total.value();
}

double win_prob(int i, const Strategy& p, const EvalOptions& opts) {
  return win_prob_prefix(i, p.probs(), p.n(), opts);
}

std::vector<double> win_prob_gradient_prefix(int i, std::span<const double> prefix, int n,
                                             const EvalOptions& opts) {
  check_args(i, prefix, n, opts);
  const SubsetProblem pb{i, n, prefix};
  const int head = std::min(pb.vars(), kHeadBits);
  const auto width = static_cast<std::size_t>(i);
  std::vector<std::vector<double>> block_grads(std::size_t{1} << head);
  run_blocks(block_grads, worker_count(opts, pb.vars(), block_grads.size()), [&](std::size_t b) {
    std::vector<int> members;
    for (int j = 0; j < head; ++j) {
      if (b & (std::size_t{1} << j)) members.push_back(j);
    }
    GradientAcc acc{std::vector<CompensatedSum>(width)};
    grad_tail(pb, head, head_state(pb, b, head), members, acc);
    std::vector<double> out(width);
    for (std::size_t k = 0; k < width; ++k) out[k] = acc.parts[k].value();
    return out;
  });
  std::vector<CompensatedSum> total(width);
  for (const auto& g : block_grads) {
    for (std::size_t k = 0; k < width; ++k) total[k].add(g[k]);
  }
  std::vector<double> out(width);
  for (std::size_t k = 0; k < width; ++k) out[k] = total[k].value();
  return out;
}

std::vector<double> win_prob_gradient(int i, const Strategy& p, const EvalOptions& opts) {
  std::vector<double> g = win_prob_gradient_prefix(i, p.probs(), p.n(), opts);
  g.resize(static_cast<std::size_t>(p.n()), 0.0);
  return g;
}

WinProbVector win_prob_vector(const Strategy& p, const EvalOptions& opts) {
  WinProbVector out;
  out.values.reserve(static_cast<std::size_t>(p.n()));
  for (int i = 1; i <= p.n(); ++i) out.values.push_back(win_prob(i, p, opts));
  return out;
}

PayoffReport expected_payoff(const Strategy& pi, const Strategy& p, const EvalOptions& opts) {
  if (pi.n() != p.n()) {
    throw DomainError("strategies cover different n (" + std::to_string(pi.n()) + " vs " +
                      std::to_string(p.n()) + ")");
  }
  PayoffReport report;
  report.per_number = win_prob_vector(p, opts);
  CompensatedSum w;
  for (int i = 1; i <= p.n(); ++i) w.add(report.per_number(i) * pi.prob(i));
  report.w = w.value();
  return report;
}

double symmetric_payoff(const Strategy& p, const EvalOptions& opts) {
  return expected_payoff(p, p, opts).w;
}

double uniform_asymptotic_ci(int i) {
  if (i < 1) throw DomainError("index must be >= 1");
  const double inv_e = std::exp(-1.0);
  return inv_e * std::pow(1.0 - inv_e, i - 1);
}

}  // namespace lupi

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <tuple>

#include "lupi/errors.hpp"
#include "lupi/solvers.hpp"

namespace lupi {

bool SequentialResult::all_real() const {
  return std::all_of(entries.begin(), entries.end(),
                     [](const SequentialEntry& e) { return e.status == RootStatus::kRealRoot; });
}

std::vector<double> SequentialResult::found() const {
  std::vector<double> out;
  for (const auto& e : entries) {
    if (!e.p) break;
    out.push_back(*e.p);
  }
  return out;
}

namespace {

// Minimizes |g| on [a, b] by golden-section search.
template <class F>
double min_abs(const F& g, double a, double b) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = std::abs(g(x1));
  double f2 = std::abs(g(x2));
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = std::abs(g(x1));
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = std::abs(g(x2));
    }
  }
  return std::min({f1, f2, std::abs(g(a)), std::abs(g(b))});
}

// Bisection on a sign-changing bracket down to adjacent doubles.
template <class F>
double bisect(const F& g, double lo, double hi, double g_lo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = g(mid);
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

SequentialResult sequential_solve(int n, double c0, int depth, const EvalOptions& eval) {
  require_game_size(n);
  if (!(c0 > 0.0 && c0 < 1.0)) throw DomainError("c0 must lie in (0, 1)");
  if (depth < 1 || depth > n) {
    throw DomainError("depth " + std::to_string(depth) + " outside 1.." + std::to_string(n));
  }

  SequentialResult out;
  out.c0 = c0;
  std::vector<double> prefix;
  prefix.reserve(static_cast<std::size_t>(depth));

  const double p1 = 1.0 - std::pow(c0, 1.0 / (n - 1));
  prefix.push_back(p1);
  out.entries.push_back({1, p1, RootStatus::kRealRoot, std::abs(std::pow(1.0 - p1, n - 1) - c0)});
  out.prefix_sum = p1;

  for (int i = 2; i <= depth; ++i) {
    const double width = 1.0 - out.prefix_sum;
    prefix.push_back(0.0);
    auto g = [&](double x) {
      prefix.back() = x;
      return win_prob_prefix(i, prefix, n, eval) - c0;
    };

    std::vector<double> values(kSequentialGrid + 1);
    for (int k = 0; k <= kSequentialGrid; ++k) values[static_cast<std::size_t>(k)] = g(width * k / kSequentialGrid);

    std::optional<double> root;
    for (int k = 0; k < kSequentialGrid && !root; ++k) {
      const double lo = width * k / kSequentialGrid;
      const double hi = width * (k + 1) / kSequentialGrid;
      const double g_lo = values[static_cast<std::size_t>(k)];
      const double g_hi = values[static_cast<std::size_t>(k + 1)];
      if (k > 0 && g_lo == 0.0) {
        root = lo;
      } else if ((g_lo < 0.0) != (g_hi < 0.0) && g_hi != 0.0 && g_lo != 0.0) {
        root = bisect(g, lo, hi, g_lo);
      }
    }

    if (!root) {
      const auto best = static_cast<int>(std::min_element(values.begin(), values.end(),
                                                          [](double a, double b) { return std::abs(a) < std::abs(b); }) -
                                         values.begin());
      const double a = width * std::max(0, best - 1) / kSequentialGrid;
      const double b = width * std::min(kSequentialGrid, best + 1) / kSequentialGrid;
      out.entries.push_back({i, std::nullopt, RootStatus::kNoRealRoot, min_abs(g, a, b)});
      break;
    }
    const double residual = std::abs(g(*root));
    prefix.back() = *root;
    out.entries.push_back({i, *root, RootStatus::kRealRoot, residual});
    out.prefix_sum += *root;
  }
  return out;
}

namespace {

enum class C0Side { kTooSmall, kTooLarge };

struct Classified {
  C0Side side;
  SequentialResult run;
  double sum = 0.0;  // sum of found roots
};

Classified classify(int n, double c0, const EvalOptions& eval) {
  Classified c{C0Side::kTooSmall, sequential_solve(n, c0, n, eval)};
  const auto p = c.run.found();
  c.sum = std::accumulate(p.begin(), p.end(), 0.0);
  if (c.run.all_real()) {
    c.side = c.sum > 1.0 ? C0Side::kTooSmall : C0Side::kTooLarge;
  } else {
    // Early stop: fall back to the tail-feasibility sum at the last found depth.
    const auto j = static_cast<int>(p.size());
    const double tail = c.sum + (n - j) * p.back() - 1.0;
    c.side = tail < 0.0 ? C0Side::kTooLarge : C0Side::kTooSmall;
  }
  return c;
}

std::string trace_text(const std::vector<std::pair<double, C0Side>>& trace) {
  std::ostringstream os;
  os.precision(17);
  for (const auto& [c0, side] : trace) os << " (" << c0 << ", " << (side == C0Side::kTooSmall ? "small" : "large") << ")";
  return os.str();
}

}  // namespace

CneResult find_cne_sequential(int n, double tol, const EvalOptions& eval) {
  require_game_size(n);
  std::vector<std::pair<double, C0Side>> trace;

  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  const Classified at_lo = classify(n, lo, eval);
  Classified at_hi = classify(n, hi, eval);
  trace.emplace_back(lo, at_lo.side);
  trace.emplace_back(hi, at_hi.side);
  if (at_lo.side != C0Side::kTooSmall || at_hi.side != C0Side::kTooLarge) {
    throw ConvergenceError("c0 classification not monotone on the initial bracket:" + trace_text(trace));
  }

  int iterations = 0;
  while (!at_hi.run.all_real() || std::abs(at_hi.sum - 1.0) > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iterations;
    Classified at_mid = classify(n, mid, eval);
    trace.emplace_back(mid, at_mid.side);
    if (at_mid.side == C0Side::kTooSmall) {
      lo = mid;
    } else {
      hi = mid;
      at_hi = std::move(at_mid);
    }
  }

  // A jump in the signal at a collapsed bracket means the classification is ambiguous.
  const double deviation = std::abs(at_hi.sum - 1.0);
  if (!at_hi.run.all_real() || deviation > 1e-6) {
    throw ConvergenceError("c0 bisection collapsed with sum deviation " + std::to_string(deviation) +
                           "; trace:" + trace_text(trace));
  }

  std::vector<double> probs = at_hi.run.found();
  probs.back() = 1.0 - std::accumulate(probs.begin(), probs.end() - 1, 0.0);
  return CneResult{hi, Strategy(std::move(probs)), deviation, iterations};
}

namespace {

struct DepthProbe {
  bool feasible = false;  // depth-j roots all real
  bool tail_ok = false;   // sum + (n-j) p_j >= 1
};

DepthProbe probe(int n, int depth, double c0, const EvalOptions& eval) {
  const SequentialResult r = sequential_solve(n, c0, depth, eval);
  DepthProbe pr;
  pr.feasible = r.all_real() && static_cast<int>(r.entries.size()) == depth && r.prefix_sum <= 1.0;
  if (pr.feasible) {
    pr.tail_ok = r.prefix_sum + (n - depth) * *r.entries.back().p >= 1.0;
  }
  return pr;
}

// Shrinks [bad, good] onto the boundary of pred; returns the final pair.
template <class Pred>
std::pair<double, double> bisect_boundary(double bad, double good, double tol, const Pred& pred) {
  while (std::abs(good - bad) > tol) {
    const double mid = 0.5 * (bad + good);
    if (mid == bad || mid == good) break;
    (pred(mid) ? good : bad) = mid;
  }
  return {bad, good};
}

}  // namespace

C0Interval bound_c0(int n, int depth, double tol, const EvalOptions& eval) {
  require_game_size(n);
  if (depth < 1 || depth > n) {
    throw DomainError("depth " + std::to_string(depth) + " outside 1.." + std::to_string(n));
  }
  auto feasible = [&](double c0) { return probe(n, depth, c0, eval).feasible; };
  auto tail_ok = [&](double c0) { return probe(n, depth, c0, eval).tail_ok; };

  constexpr int kScan = 256;
  constexpr double kEdge = 1e-12;

  double before = kEdge;
  double first = -1.0;
  if (feasible(before)) first = before;  // feasible all the way down (depth 1)
  for (int k = 1; k < kScan && first < 0.0; ++k) {
    const double c0 = static_cast<double>(k) / kScan;
    if (feasible(c0)) {
      first = c0;
      break;
    }
    before = c0;
  }
  if (first < 0.0) throw ConvergenceError("no c0 in (0, 1) admits a depth-j sequential solve");

  double low_bad = 0.0;
  double low_good = first;
  if (first > kEdge) {
    std::tie(low_bad, low_good) = bisect_boundary(before, first, tol, feasible);
  }
  if ((low_bad > 0.0 && feasible(low_bad)) || !feasible(low_good)) {
    throw ConvergenceError("lower c0 bracket failed re-verification");
  }

  C0Interval out;
  out.depth = depth;
  if (!tail_ok(low_good)) {
    // The two criteria meet at the feasibility boundary (depth == n): report its final bracket.
    out.lower = low_bad;
    out.upper = low_good;
    return out;
  }

  double last_ok = low_good;
  double fail = 1.0 - kEdge;
  for (double c0 = low_good + 1.0 / kScan; c0 < 1.0; c0 += 1.0 / kScan) {
    if (!tail_ok(c0)) {
      fail = c0;
      break;
    }
    last_ok = c0;
  }
  auto [up_bad, up_good] = bisect_boundary(fail, last_ok, tol, tail_ok);
  if (!tail_ok(up_good) || tail_ok(up_bad)) {
    throw ConvergenceError("upper c0 bracket failed re-verification");
  }
  out.lower = low_good;
  out.upper = up_good;
  return out;
}

}  // namespace lupi

#include "lupi/solvers.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "lupi/errors.hpp"
#include "lupi/rng.hpp"

namespace lupi {

namespace {

struct NewtonState {
  std::vector<double> p;  // full p_1..p_n
  std::vector<double> c;  // c_1..c_n
  Eigen::VectorXd f;      // c_i - c_n, i < n
  double max_abs = 0.0;
  double norm = 0.0;
};

NewtonState evaluate_state(std::vector<double> p, const EvalOptions& eval) {
  const int n = static_cast<int>(p.size());
  NewtonState s;
  s.c.resize(p.size());
  for (int i = 1; i <= n; ++i) s.c[static_cast<std::size_t>(i - 1)] = win_prob_prefix(i, p, n, eval);
  s.f.resize(n - 1);
  for (int i = 0; i < n - 1; ++i) s.f[i] = s.c[static_cast<std::size_t>(i)] - s.c.back();
  s.max_abs = s.f.cwiseAbs().maxCoeff();
  s.norm = s.f.norm();
  s.p = std::move(p);
  return s;
}

bool inside_open_simplex(const std::vector<double>& p) {
  return std::all_of(p.begin(), p.end(), [](double v) { return v > 0.0 && v < 1.0; });
}

// d(c_i - c_n)/dx_m with x_m = p_m (m < n) and p_n = 1 - sum x.
Eigen::MatrixXd reduced_jacobian(const std::vector<double>& p, const EvalOptions& eval) {
  const int n = static_cast<int>(p.size());
  Eigen::MatrixXd dc = Eigen::MatrixXd::Zero(n, n - 1);
  for (int i = 1; i <= n; ++i) {
    const std::vector<double> g = win_prob_gradient_prefix(i, p, n, eval);
    const double d_pn = i == n ? g.back() : 0.0;
    for (int m = 0; m < n - 1; ++m) {
      const double d_pm = m < i ? g[static_cast<std::size_t>(m)] : 0.0;
      dc(i - 1, m) = d_pm - d_pn;
    }
  }
  Eigen::MatrixXd jac(n - 1, n - 1);
  for (int i = 0; i < n - 1; ++i) jac.row(i) = dc.row(i) - dc.row(n - 1);
  return jac;
}

// Iterates live in additive log-ratio coordinates y_m = log(p_m / p_n), so
// every trial point is strictly inside the simplex.
std::vector<double> from_log_ratio(const Eigen::VectorXd& y) {
  const auto n = static_cast<std::size_t>(y.size()) + 1;
  std::vector<double> p(n);
  const double shift = std::max(0.0, y.maxCoeff());
  double total = std::exp(-shift);
  p.back() = total;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    p[m] = std::exp(y[static_cast<Eigen::Index>(m)] - shift);
    total += p[m];
  }
  for (double& v : p) v /= total;
  return p;
}

}  // namespace

NESolution solve_ne(int n, const NewtonOptions& opts) {
  require_game_size(n);
  if (n > opts.n_max) {
    throw ResourceError("solve_ne: n=" + std::to_string(n) + " above cap " + std::to_string(opts.n_max));
  }
  constexpr double kMinStep = 0x1.0p-30;

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n - 1);
  NewtonState cur = evaluate_state(from_log_ratio(y), opts.eval);
  int iter = 0;
  bool converged = cur.max_abs <= opts.tol;
  while (!converged && iter < opts.max_iter) {
    ++iter;
    // dx_k/dy_m = p_k (delta_km - p_m)
    Eigen::MatrixXd dxdy(n - 1, n - 1);
    for (int k = 0; k < n - 1; ++k) {
      for (int m = 0; m < n - 1; ++m) {
        const double pk = cur.p[static_cast<std::size_t>(k)];
        dxdy(k, m) = pk * ((k == m ? 1.0 : 0.0) - cur.p[static_cast<std::size_t>(m)]);
      }
    }
    const Eigen::MatrixXd jac = reduced_jacobian(cur.p, opts.eval) * dxdy;
    const Eigen::VectorXd dy = jac.fullPivLu().solve(-cur.f);

    double t = 1.0;
    for (;;) {
      const Eigen::VectorXd trial_y = y + t * dy;
      std::vector<double> trial = from_log_ratio(trial_y);
      if (trial_y.allFinite() && inside_open_simplex(trial)) {
        NewtonState next = evaluate_state(std::move(trial), opts.eval);
        if (next.norm < cur.norm) {
          cur = std::move(next);
          y = trial_y;
          break;
        }
      }
      t *= 0.5;
      if (t < kMinStep) {
        throw ConvergenceError("solve_ne(n=" + std::to_string(n) + "): step damping underflow at iteration " +
                               std::to_string(iter) + ", residual " + std::to_string(cur.max_abs));
      }
    }
    converged = cur.max_abs <= opts.tol;
  }

  NESolution sol{Strategy(cur.p), 0.0, cur.max_abs, iter, converged};
  double w = 0.0;
  for (std::size_t k = 0; k < cur.c.size(); ++k) w += cur.c[k] * cur.p[k];
  sol.c_ne = w;
  return sol;
}

std::vector<double> project_to_simplex(std::vector<double> v) {
  if (v.empty()) throw DomainError("cannot project an empty vector");
  std::vector<double> u(v);
  std::sort(u.begin(), u.end(), std::greater<>());
  double running = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    running += u[k];
    const double t = (running - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(x - theta, 0.0);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (double& x : v) x /= total;
  return v;
}

namespace {

double raw_symmetric_payoff(const std::vector<double>& p, const EvalOptions& eval) {
  const int n = static_cast<int>(p.size());
  double w = 0.0;
  for (int i = 1; i <= n; ++i) w += win_prob_prefix(i, p, n, eval) * p[static_cast<std::size_t>(i - 1)];
  return w;
}

// Central differences along e_k - (1/n)1, which keeps the sum fixed.
std::vector<double> tangent_gradient(const std::vector<double>& p, double h, const EvalOptions& eval) {
  const std::size_t n = p.size();
  std::vector<double> g(n);
  std::vector<double> plus(p), minus(p);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = 0; m < n; ++m) {
      const double d = (m == k ? 1.0 : 0.0) - 1.0 / static_cast<double>(n);
      plus[m] = p[m] + h * d;
      minus[m] = p[m] - h * d;
    }
    g[k] = (raw_symmetric_payoff(plus, eval) - raw_symmetric_payoff(minus, eval)) / (2.0 * h);
  }
  return g;
}

struct AscentRun {
  std::vector<double> p;
  double w = 0.0;
  int iterations = 0;
  bool converged = false;
};

AscentRun ascend(std::vector<double> p, const BestSymmetricOptions& opts) {
  AscentRun run{std::move(p)};
  run.w = raw_symmetric_payoff(run.p, opts.eval);
  double step = 1.0;
  for (; run.iterations < opts.max_iter; ++run.iterations) {
    const std::vector<double> g = tangent_gradient(run.p, opts.fd_step, opts.eval);
    bool accepted = false;
    double moved = 0.0;
    while (step > 1e-20) {
      std::vector<double> trial(run.p);
      for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += step * g[k];
      trial = project_to_simplex(std::move(trial));
      double predicted = 0.0;
      moved = 0.0;
      for (std::size_t k = 0; k < trial.size(); ++k) {
        predicted += g[k] * (trial[k] - run.p[k]);
        moved = std::max(moved, std::abs(trial[k] - run.p[k]));
      }
      const double w = raw_symmetric_payoff(trial, opts.eval);
      if (moved > 0.0 && w >= run.w + 1e-4 * predicted) {
        run.p = std::move(trial);
        run.w = w;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || moved < opts.step_tol) {
      run.converged = true;
      break;
    }
    step = std::min(step * 2.0, 1e3);
  }
  return run;
}

std::vector<double> random_interior_point(int n, Xoshiro256StarStar& gen) {
  std::vector<double> p(static_cast<std::size_t>(n));
  for (double& x : p) x = -std::log(gen.next_unit()) + 1e-3;
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

BestSymmetricResult best_symmetric(int n, const BestSymmetricOptions& opts) {
  require_game_size(n);
  Xoshiro256StarStar gen(opts.seed, 0);

  std::vector<std::vector<double>> starts;
  starts.emplace_back(static_cast<std::size_t>(n), 1.0 / n);
  for (int s = 0; s < opts.random_starts; ++s) starts.push_back(random_interior_point(n, gen));

  AscentRun best;
  best.w = -1.0;
  for (const auto& start : starts) {
    AscentRun run = ascend(start, opts);
    if (run.w > best.w) best = std::move(run);
  }
  const double total = std::accumulate(best.p.begin(), best.p.end(), 0.0);
  for (double& x : best.p) x /= total;
  return BestSymmetricResult{Strategy(best.p), best.w, best.iterations, best.converged,
                             static_cast<int>(starts.size())};
}

bool verify_ordering_inequality(const Strategy& p) {
  const int n = p.n();
  if (n < 2) return false;
  const double p1 = p.prob(1);
  const double p2 = p.prob(2);
  const double lhs = std::pow(1.0 - p2, n - 1) - std::pow(1.0 - p1, n - 1);
  const double rhs = (n - 1) * p1 * std::pow(1.0 - p1 - p2, n - 2);
  return std::abs(lhs - rhs) <= 1e-9 && p2 < p1;
}

}  // namespace lupi

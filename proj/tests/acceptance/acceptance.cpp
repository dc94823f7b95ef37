// Acceptance checks. Usage: lupi_acceptance [criterion...]; with no arguments
// every criterion runs. Prints one PASS/FAIL line per criterion and exits
// non-zero if any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lupi/oracle.hpp"
#include "lupi/polynomial.hpp"
#include "lupi/serialize.hpp"
#include "lupi/solvers.hpp"
#include "lupi/winprob.hpp"
#include "support.hpp"

using namespace lupi;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail.clear();
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += why;
  }
  void note(const std::string& what) {
    if (!pass) return;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome closed_form_three() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const NESolution s = solve_ne(3);
  const double secs = seconds_since(t0);
  const double r3 = std::sqrt(3.0);
  const double want[3] = {2 * r3 - 3, 2 - r3, 2 - r3};
  for (int i = 1; i <= 3; ++i) {
    if (std::abs(s.strategy.prob(i) - want[i - 1]) > 1e-10) {
      o.fail(fmt("p_%g = %.15g", i, s.strategy.prob(i)));
    }
  }
  if (std::abs(s.c_ne - (28 - 16 * r3)) > 1e-10) o.fail(fmt("c_ne = %.15g", s.c_ne));
  if (secs >= 1.0) o.fail(fmt("took %.3f s", secs));
  o.note(fmt("c_ne=%.12f in %.3f s", s.c_ne, secs));
  return o;
}

Outcome nine_player_digits() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const NESolution s = solve_ne(9);
  const double secs = seconds_since(t0);
  const double want[4] = {0.2515, 0.2348, 0.2086, 0.1641};
  for (int i = 1; i <= 4; ++i) {
    if (std::abs(s.strategy.prob(i) - want[i - 1]) > 5e-4) o.fail(fmt("p_%g = %.6f", i, s.strategy.prob(i)));
  }
  if (secs >= 10.0) o.fail(fmt("took %.3f s", secs));
  o.note(fmt("p_1..p_3 = %.5f %.5f %.5f", s.strategy.prob(1), s.strategy.prob(2), s.strategy.prob(3)));
  return o;
}

Outcome sequential_reproduction() {
  Outcome o;
  const SequentialResult r = sequential_solve(9, 0.0985, 4);
  const double want[4] = {0.2515, 0.2349, 0.2087, 0.1643};
  if (!r.all_real() || r.entries.size() != 4) {
    o.fail("a root is missing");
    return o;
  }
  for (int i = 0; i < 4; ++i) {
    const double got = *r.entries[static_cast<std::size_t>(i)].p;
    if (std::abs(got - want[i]) > 5e-4) o.fail(fmt("p_%g = %.6f", i + 1, got));
  }
  o.note(fmt("p_4 = %.6f", *r.entries[3].p));
  return o;
}

Outcome complex_root_diagnostic() {
  Outcome o;
  const SequentialResult coarse = sequential_solve(3, 0.287, 3);
  const SequentialResult fine = sequential_solve(3, 0.287187, 3);
  if (coarse.entries.size() != 3 || coarse.entries[2].status != RootStatus::kNoRealRoot) {
    o.fail("c0=0.287 does not report no-real-root at i=3");
    return o;
  }
  const double before = coarse.entries[2].residual;
  const double after = fine.entries.size() == 3 ? fine.entries[2].residual : before;
  if (!(after < before)) o.fail(fmt("residual %.3g -> %.3g", before, after));
  o.note(fmt("residual %.3g -> %.3g", before, after));
  return o;
}

Outcome interval_bound() {
  Outcome o;
  const C0Interval b = bound_c0(9, 4);
  const CneResult c = find_cne_sequential(9);
  if (std::abs(b.lower - 0.078) > 1e-3) o.fail(fmt("lower %.6f", b.lower));
  if (std::abs(b.upper - 0.146) > 1e-3) o.fail(fmt("upper %.6f", b.upper));
  if (c.c_ne < b.lower || c.c_ne > b.upper) o.fail(fmt("c_ne %.6f outside", c.c_ne));
  o.note(fmt("[%.6f, %.6f] holds c_ne=%.8f", b.lower, b.upper, c.c_ne));
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(2024);
  double worst = 0.0;
  for (int n = 3; n <= 7; ++n) {
    for (int rep = 0; rep < 100; ++rep) {
      const Strategy s(test::random_simplex_point(n, gen));
      for (int i = 1; i <= n; ++i) worst = std::max(worst, std::abs(win_prob(i, s) - exact_win_prob(i, s)));
    }
  }
  const double secs = seconds_since(t0);
  if (worst > 1e-12) o.fail(fmt("max diff %.3g", worst));
  if (secs >= 60.0) o.fail(fmt("took %.1f s", secs));
  o.note(fmt("max diff %.3g in %.2f s", worst, secs));
  return o;
}

Outcome symbolic_equivalence() {
  Outcome o;
  std::mt19937_64 gen(77);
  double worst = 0.0;
  for (int n = 3; n <= 6; ++n) {
    std::vector<SparsePolynomial> c;
    for (int i = 1; i <= n; ++i) c.push_back(symbolic_ci(n, i));
    for (int rep = 0; rep < 20; ++rep) {
      const std::vector<double> point = test::random_simplex_point(n, gen);
      const Strategy s(point);
      for (int i = 1; i <= n; ++i) {
        worst = std::max(worst, std::abs(c[static_cast<std::size_t>(i - 1)].evaluate(point) - win_prob(i, s)));
      }
    }
    for (int k = 0; k <= n; ++k) {
      if (!(build_zk(n, k) == build_zk_operator_product(n, k))) o.fail(fmt("Z_%g differs at n=%g", k, n));
    }
  }
  if (worst > 1e-12) o.fail(fmt("max diff %.3g", worst));
  o.note(fmt("max diff %.3g; recursion == product for n=3..6", worst));
  return o;
}

Outcome operator_identities() {
  Outcome o;
  std::mt19937_64 gen(99);
  int checks = 0;
  auto expect = [&](bool ok, const char* name) {
    ++checks;
    if (!ok) o.fail(name);
  };
  for (int rep = 0; rep < 20; ++rep) {
    const int n = 2 + rep % 4;
    const SparsePolynomial q1 = test::random_polynomial(n, gen);
    const SparsePolynomial q2 = test::random_polynomial(n, gen);
    const Rational a(-7, 3), b(5, 11);
    for (int i = 1; i <= n; ++i) {
      const SparsePolynomial li = project_linear(q1, i);
      expect(project_linear(li, i) == li, "idempotence");
      expect(project_linear(a * q1 + b * q2, i) == a * li + b * project_linear(q2, i), "linearity");
      for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        expect(project_linear(project_linear(q1, j), i) == project_linear(li, j), "L commutation");
        expect(eliminate(li, j) == project_linear(eliminate(q1, j), i), "E/L commutation");
      }
      for (unsigned m = 0; m <= 5; ++m) {
        Exponents e(static_cast<std::size_t>(n), 0);
        e[static_cast<std::size_t>(i - 1)] = m;
        SparsePolynomial mono(n);
        mono.add_term(e, a);
        SparsePolynomial want(n);
        if (m == 1) want = mono;
        expect(project_linear(mono, i) == want, "Kronecker delta");
      }
    }
  }
  for (int n = 3; n <= 6; ++n) {
    for (int j = 0; j <= n; ++j) {
      const SparsePolynomial z = build_zk(n, j);
      for (int i = 1; i <= j; ++i) expect(project_linear(z, i).is_zero(), "L_i[Z_j] = 0");
    }
  }
  o.note(std::to_string(checks) + " exact checks");
  return o;
}

Outcome monte_carlo() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const NESolution ne = solve_ne(5);
  constexpr std::int64_t kRounds = 10'000'000;
  const SimulationStats a = simulate(ne.strategy, ne.strategy, kRounds, 31337, 8);
  const SimulationStats b = simulate(ne.strategy, ne.strategy, kRounds, 31337, 8);
  const double secs = seconds_since(t0);
  double worst = 0.0;
  for (std::size_t k = 0; k < a.est_ci.size(); ++k) {
    if (!a.est_ci[k] || !a.std_err[k]) {
      o.fail("number " + std::to_string(k + 1) + " never chosen");
      continue;
    }
    worst = std::max(worst, std::abs(*a.est_ci[k] - ne.c_ne) / *a.std_err[k]);
  }
  if (worst > 4.0) o.fail(fmt("worst deviation %.2f SE", worst));
  if (to_json(a) != to_json(b)) o.fail("not reproducible");
  if (secs >= 60.0) o.fail(fmt("took %.1f s", secs));
  o.note(fmt("worst deviation %.2f SE; %.1f s", worst, secs));
  return o;
}

Outcome comparison_payoffs() {
  Outcome o;
  for (int n = 3; n <= 12; ++n) {
    const double zeng = symmetric_payoff(make_zeng(n));
    if (std::abs(zeng - std::ldexp(1.0, 1 - n)) > 1e-14) o.fail(fmt("zeng n=%g: %.17g", n, zeng));
    const double uniform = symmetric_payoff(make_uniform(n));
    const double flitney = symmetric_payoff(make_flitney(n));
    const double ne = symmetric_payoff(solve_ne(n).strategy);
    for (double w : {uniform, flitney, ne, zeng}) {
      if (w > 1.0 / n + 1e-15) o.fail(fmt("payoff %.6f above 1/%g", w, n));
    }
    if (n < 4) continue;
    if (!(uniform > ne)) o.fail(fmt("n=%g: uniform %.6f <= NE %.6f", n, uniform, ne));
    if (!(ne > std::max(flitney, zeng))) {
      o.fail(fmt("n=%g: NE %.6f <= max(flitney, zeng) %.6f", n, ne, std::max(flitney, zeng)));
    }
  }
  o.note("chain and bounds hold for n=4..12");
  return o;
}

Outcome asymptotics() {
  Outcome o;
  const Strategy u = make_uniform(10000);
  double worst = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double want = std::exp(-1.0) * std::pow(1 - std::exp(-1.0), i - 1);
    worst = std::max(worst, std::abs(win_prob(i, u) - want));
  }
  if (worst > 1e-3) o.fail(fmt("max diff %.3g", worst));
  o.note(fmt("max diff %.3g", worst));
  return o;
}

Outcome uniform_optimality() {
  Outcome o;
  std::mt19937_64 gen(4242);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int n = 3; n <= 12; ++n) {
    const BestSymmetricResult r = best_symmetric(n);
    double dev = 0.0;
    for (int i = 1; i <= n; ++i) dev = std::max(dev, std::abs(r.strategy.prob(i) - 1.0 / n));
    if (dev > 1e-6) o.fail(fmt("n=%g: best_symmetric off uniform by %.3g", n, dev));

    const double w_uniform = symmetric_payoff(make_uniform(n));
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> p(static_cast<std::size_t>(n), 1.0 / n);
      const double scale = 0.2 / n * (1 + rep % 5);
      for (double& x : p) x += scale * noise(gen);
      const double w = symmetric_payoff(Strategy(project_to_simplex(p)));
      if (w > w_uniform) o.fail(fmt("n=%g: perturbation beats uniform (%.17g > %.17g)", n, w, w_uniform));
    }
  }
  o.note("n=3..12");
  return o;
}

Outcome inequality_check() {
  Outcome o;
  for (int n = 3; n <= 12; ++n) {
    if (!verify_ordering_inequality(solve_ne(n).strategy)) o.fail(fmt("fails at NE n=%g", n));
    if (verify_ordering_inequality(make_uniform(n))) o.fail(fmt("passes at uniform n=%g", n));
  }
  o.note("n=3..12");
  return o;
}

Outcome scale_ceiling() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  const NESolution s12 = solve_ne(12);
  const double secs12 = seconds_since(t0);
  if (!s12.converged || s12.residual > 1e-10) o.fail(fmt("n=12 residual %.3g", s12.residual));
  if (secs12 >= 60.0) o.fail(fmt("n=12 took %.1f s", secs12));
  t0 = std::chrono::steady_clock::now();
  const NESolution s20 = solve_ne(20);
  const double secs20 = seconds_since(t0);
  if (!s20.converged || s20.residual > 1e-10) o.fail(fmt("n=20 residual %.3g", s20.residual));
  o.note(fmt("n=12 residual %.3g in %.2f s; n=20 in %.2f s", s12.residual, secs12, secs20));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "n=3 closed form", closed_form_three},
      {2, "n=9 equilibrium digits", nine_player_digits},
      {3, "sequential reproduction", sequential_reproduction},
      {4, "complex-root diagnostic", complex_root_diagnostic},
      {5, "interval bound", interval_bound},
      {6, "oracle equivalence", oracle_equivalence},
      {7, "symbolic equivalence", symbolic_equivalence},
      {8, "operator identities", operator_identities},
      {9, "Monte Carlo consistency", monte_carlo},
      {10, "comparison payoffs", comparison_payoffs},
      {11, "uniform asymptotics", asymptotics},
      {12, "uniform optimality", uniform_optimality},
      {13, "ordering inequality", inequality_check},
      {14, "scale ceiling", scale_ceiling},
  };
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) selected.push_back(std::stoi(argv[k]));

  int failures = 0;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("criterion %2d %-26s %s  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

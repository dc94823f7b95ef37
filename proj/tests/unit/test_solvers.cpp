#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "lupi/errors.hpp"
#include "lupi/oracle.hpp"
#include "lupi/solvers.hpp"
#include "support.hpp"

using namespace lupi;

TEST_CASE("three-player equilibrium") {
  const NESolution s = solve_ne(3);
  const double s3 = std::sqrt(3.0);
  CHECK(s.converged);
  CHECK(std::abs(s.strategy.prob(1) - (2 * s3 - 3)) < 1e-10);
  CHECK(std::abs(s.strategy.prob(2) - (2 - s3)) < 1e-10);
  CHECK(std::abs(s.c_ne - (28 - 16 * s3)) < 1e-10);
  CHECK(s.residual <= 1e-12);
}

TEST_CASE("equilibrium is flat and decreasing for n up to 10") {
  for (int n = 4; n <= 10; ++n) {
    const NESolution s = solve_ne(n);
    REQUIRE(s.converged);
    const std::vector<double> probs(s.strategy.probs().begin(), s.strategy.probs().end());
    for (int i = 1; i <= n; ++i) {
      const double exact = n <= 7 ? test::brute_force_ci(i, probs) : exact_win_prob(i, s.strategy);
      CHECK(std::abs(exact - s.c_ne) < 1e-10);
    }
    CHECK(s.strategy.prob(2) < s.strategy.prob(1));
    CHECK(verify_ordering_inequality(s.strategy));
  }
  CHECK_FALSE(verify_ordering_inequality(make_uniform(5)));
}

TEST_CASE("solver caps") {
  CHECK_THROWS_AS(solve_ne(2), DomainError);
  CHECK_THROWS_AS(solve_ne(21), ResourceError);
  NewtonOptions tight;
  tight.max_iter = 1;
  const NESolution s = solve_ne(8, tight);
  CHECK_FALSE(s.converged);
  CHECK(s.iterations == 1);
}

TEST_CASE("sequential procedure") {
  const SequentialResult r = sequential_solve(3, 0.287, 3);
  REQUIRE(r.entries.size() == 3);
  CHECK(r.entries[0].status == RootStatus::kRealRoot);
  CHECK(*r.entries[0].p == doctest::Approx(1 - std::sqrt(0.287)).epsilon(1e-12));
  CHECK(r.entries[2].status == RootStatus::kNoRealRoot);
  CHECK_FALSE(r.entries[2].p);
  CHECK_FALSE(r.all_real());

  const SequentialResult closer = sequential_solve(3, 0.287187, 3);
  CHECK(closer.entries[2].residual < r.entries[2].residual);

  const SequentialResult nine = sequential_solve(9, 0.0985, 4);
  REQUIRE(nine.all_real());
  const std::vector<double> found = nine.found();
  CHECK(found.size() == 4);
  CHECK(nine.prefix_sum == doctest::Approx(std::accumulate(found.begin(), found.end(), 0.0)));

  CHECK_THROWS_AS(sequential_solve(3, 1.5, 3), DomainError);
  CHECK_THROWS_AS(sequential_solve(3, 0.2, 4), DomainError);
}

TEST_CASE("sequential c_NE agrees with Newton") {
  for (int n = 3; n <= 7; ++n) {
    const CneResult seq = find_cne_sequential(n);
    const NESolution ne = solve_ne(n);
    CHECK(std::abs(seq.c_ne - ne.c_ne) < 1e-8);
    CHECK(seq.sum_deviation < 1e-6);
  }
}

TEST_CASE("c0 bounds narrow with depth and contain c_NE") {
  const double c_ne = solve_ne(6).c_ne;
  double width = 2.0;
  for (int j = 1; j <= 6; ++j) {
    const C0Interval b = bound_c0(6, j);
    CHECK(b.depth == j);
    CHECK(b.lower <= c_ne + 1e-9);
    CHECK(b.upper >= c_ne - 1e-9);
    CHECK(b.upper - b.lower <= width + 1e-12);
    width = b.upper - b.lower;
  }
  CHECK_THROWS_AS(bound_c0(6, 0), DomainError);
  CHECK_THROWS_AS(bound_c0(6, 7), DomainError);
}

TEST_CASE("simplex projection") {
  const std::vector<double> p = project_to_simplex({0.5, 0.2, 0.3});
  CHECK(p == std::vector<double>{0.5, 0.2, 0.3});
  const std::vector<double> q = project_to_simplex({2.0, 0.0, -1.0});
  CHECK(q == std::vector<double>{1.0, 0.0, 0.0});
  const std::vector<double> r = project_to_simplex({0.6, 0.6, 0.0});
  CHECK(r[0] == doctest::Approx(0.5));
  CHECK(r[2] == 0.0);
}

TEST_CASE("uniform maximizes the symmetric payoff") {
  for (int n = 3; n <= 6; ++n) {
    const BestSymmetricResult r = best_symmetric(n);
    for (int i = 1; i <= n; ++i) CHECK(std::abs(r.strategy.prob(i) - 1.0 / n) < 1e-6);
    CHECK(r.starts == 11);
  }
}

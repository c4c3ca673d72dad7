#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "maxent/error.hpp"
#include "maxent/kc/kc.hpp"
#include "maxent/model/estimate.hpp"
#include "maxent/model/functionals.hpp"
#include "support/instances.hpp"

using namespace maxent;
using maxent::me::Distribution;
using maxent::me::MaxEntProblem;
using maxent::num::Rational;

namespace {

double residual(const Distribution& p, const MaxEntProblem& problem, std::size_t i) {
  return me::residuals(p, problem)[i];
}

}  // namespace

TEST_CASE("kc_init starts at the prior") {
  const std::vector<Rational> r{Rational(1, 4), Rational(3, 4)};
  const auto p = MaxEntProblem::with_targets(2, {{0, 1}}, {Rational(1, 2)}, r);
  const auto s = kc::kc_init(p);
  CHECK(s.iteration == 0);
  CHECK(s.p.probs == std::vector<double>{0.25, 0.75});
  CHECK(s.zeta == std::vector<double>{1.0});
  CHECK(s.normalizers.empty());
}

TEST_CASE("kc_step examples") {
  const auto two = MaxEntProblem::with_targets(2, {{0, 1}}, {Rational(3, 4)});
  auto s = kc::kc_step(kc::kc_init(two), two, 0);
  CHECK(s.iteration == 1);
  CHECK(s.zeta[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(s.p.probs[0] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.p.probs[1] == doctest::Approx(0.75).epsilon(1e-15));
  REQUIRE(s.normalizers.size() == 1);
  CHECK(s.normalizers[0] == doctest::Approx(2.0));

  // Already at the target: a fixed point.
  const auto at = MaxEntProblem::with_targets(2, {{0, 1}}, {Rational(1, 2)});
  s = kc::kc_step(kc::kc_init(at), at, 0);
  CHECK(s.zeta[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s.p.probs[0] == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(kc::kc_step(kc::kc_init(two), two, 1), InvalidArgument);
  const auto out = MaxEntProblem::with_targets(2, {{0, 1}}, {Rational(2)});
  CHECK_THROWS_AS(kc::kc_step(kc::kc_init(out), out, 0), InfeasibleError);
}

TEST_CASE("kc_step certification") {
  const auto die = MaxEntProblem::with_targets(6, {{1, 2, 3, 4, 5, 6}}, {Rational(9, 2)});
  const auto s = kc::kc_step(kc::kc_init(die), die, 0, true);
  REQUIRE(s.certificate);
  CHECK(s.certificate->interval.contains(Rational::from_double(s.zeta[0])));
  CHECK(std::abs(residual(s.p, die, 0)) <= 1e-12);
}

TEST_CASE("kc_run examples") {
  // d = 1 converges in a single step and equals the direct solution.
  const auto die = MaxEntProblem::with_targets(6, {{1, 2, 3, 4, 5, 6}}, {Rational(9, 2)});
  auto sol = kc::kc_run(die);
  CHECK(sol.method == me::Method::kc);
  CHECK(sol.diagnostics.cycles == 1);
  const auto direct = me::estimate(die, me::Method::direct);
  CHECK(testing::linf(sol.distribution.probs, direct.distribution.probs) <= 1e-10);

  // Symmetric targets on product features: uniform after the first cycle.
  const auto indep = MaxEntProblem::with_targets(4, {{0, 1, 0, 1}, {0, 0, 1, 1}},
                                                 {Rational(1, 2), Rational(1, 2)});
  sol = kc::kc_run(indep);
  CHECK(sol.diagnostics.cycles == 1);
  for (double p : sol.distribution.probs) CHECK(p == doctest::Approx(0.25).epsilon(1e-14));

  // The distribution is the parametrization of the accumulated multipliers.
  const auto coupled = MaxEntProblem::with_targets(4, {{0, 1, 2, 3}, {1, 0, 0, 2}},
                                                   {Rational(3, 2), Rational(4, 5)});
  sol = kc::kc_run(coupled);
  std::vector<double> uniform(4, 0.25);
  const auto again = me::parametrize(sol.theta, coupled.features(), uniform);
  CHECK(testing::linf(again.probs, sol.distribution.probs) <= 1e-12);
  CHECK(sol.max_abs_residual() <= 1e-10);
}

TEST_CASE("kc_run reports non-convergence with the last iterate") {
  const auto coupled = MaxEntProblem::with_targets(4, {{0, 1, 2, 3}, {1, 0, 0, 2}},
                                                   {Rational(3, 2), Rational(4, 5)});
  kc::KCOptions options;
  options.max_cycles = 1;
  options.tol = 1e-14;
  try {
    kc::kc_run(coupled, options);
    FAIL("expected a convergence error");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == 4);
    CHECK(e.iterations() == 1);
  }
}

TEST_CASE("property: each step zeroes its own residual") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    const auto inst = testing::random_instance(rng, 8, 3, 2);
    const auto& p = inst.with_targets;
    auto s = kc::kc_init(p);
    for (int step = 0; step < 3 * static_cast<int>(p.d()); ++step) {
      const std::size_t i = static_cast<std::size_t>(step) % p.d();
      s = kc::kc_step(s, p, i);
      CHECK(std::abs(residual(s.p, p, i)) <= 1e-10);
      double total = 0.0;
      for (double x : s.p.probs) {
        CHECK(x > 0.0);
        total += x;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

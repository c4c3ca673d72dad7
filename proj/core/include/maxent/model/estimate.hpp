#pragma once

#include <cstddef>

#include "maxent/groebner/buchberger.hpp"
#include "maxent/model/problem.hpp"

namespace maxent::me {

struct EstimateOptions {
  /// Bound on every |residual_i| of the returned solution.
  double tol = 1e-10;
  gb::GroebnerOptions groebner;
  /// kc cycle budget.
  std::size_t max_cycles = 500;
  /// newton / gis iteration budgets (0 keeps the method default).
  std::size_t max_iterations = 0;
  /// Sturm-certify every kc step.
  bool certify_kc = false;
};

/// Runs one estimation method and returns a solution with all residuals
/// within tol.
///
/// direct, dual and sample-dual compute the maximum-entropy estimate (uniform
/// base measure, any prior is only used for kl_to_prior). min-i-div, kc,
/// newton and gis minimize I(p || r) for the prior r, uniform when absent.
/// When the algebraic route finds several positive roots the best one by
/// entropy (or divergence) is returned and all are listed in diagnostics.
///
/// Throws InfeasibleError / BoundaryError for targets outside or on the hull
/// of the feature columns, SizeGuardError when a Gröbner guard trips,
/// ConvergenceError when the result misses tol.
Solution estimate(const MaxEntProblem& problem, Method method, const EstimateOptions& options);
Solution estimate(const MaxEntProblem& problem, Method method, double tol = 1e-10);

}  // namespace maxent::me

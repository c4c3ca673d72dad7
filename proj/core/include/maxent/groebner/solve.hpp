#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxent/groebner/buchberger.hpp"
#include "maxent/groebner/sturm.hpp"

namespace maxent::gb {

/// A common zero with every coordinate strictly positive.
///
/// `residual_norm` is the largest scaled residual |f(theta)| / max(1, sum_t
/// |c_t theta^t|) over the system polynomials, evaluated in floating point.
struct PositiveSolution {
  std::vector<double> theta;
  std::vector<IsolatingInterval> certificates;
  double residual_norm = 0.0;
};

struct SolveOptions {
  GroebnerOptions groebner;
};

struct SolveDiagnostics {
  std::size_t basis_size = 0;
  GroebnerStats groebner;
  int eliminant_degree = 0;
  std::size_t positive_roots_last = 0;
  std::size_t candidates = 0;
  std::size_t rejected = 0;
  /// Per-variable exponent gcd folded out before solving (x_k = y_k^(1/g_k)).
  std::vector<int> exponent_gcd;
  /// The plain ideal was positive-dimensional off the torus and was
  /// saturated by the product of the variables.
  bool saturated = false;
};

struct SolveResult {
  std::vector<PositiveSolution> solutions;
  SolveDiagnostics diagnostics;

  /// No common zero in the open positive orthant.
  bool infeasible() const { return solutions.empty(); }
};

/// Finds every common zero of `system` in the open positive orthant.
///
/// Pipeline: clear Laurent exponents, fold per-variable exponent gcds, lex
/// Gröbner basis (x1 > ... > xd; for d > 1 via grevlex and FGLM, saturating
/// by x1 ... xd when components on the coordinate hyperplanes get in the
/// way), Sturm isolation of the univariate eliminant in the last variable
/// over (0, inf), then back-substitution through the
/// triangular layers with numeric root finding and a final Newton polish on
/// the whole system. For one variable the roots are exact refinements of
/// certified intervals. Solutions come back sorted lexicographically.
///
/// Throws DimensionError when the system is empty or the ideal is not
/// zero-dimensional, SizeGuardError when a guard trips.
SolveResult solve_positive(std::span<const Polynomial> system, double tol,
                           const SolveOptions& options = {});

/// Scaled residual used by PositiveSolution::residual_norm.
double scaled_residual(const Polynomial& f, std::span<const double> point);

}  // namespace maxent::gb

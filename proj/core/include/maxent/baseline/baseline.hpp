#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "maxent/model/problem.hpp"

namespace maxent::baseline {

struct OptimizerReport {
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  std::size_t backtracks = 0;
  bool converged = false;
};

struct BaselineResult {
  me::Solution solution;
  OptimizerReport report;
};

/// Convex dual Psi(xi) = ln Z(xi) + sum_i xi_i T_i with
/// Z(xi) = sum_j r_j exp(-sum_i xi_i t_i(j)).
struct DualObjective {
  double value = 0.0;
  /// T_i - E_p[t_i]
  std::vector<double> gradient;
  /// Cov_p(t), row-major d x d.
  std::vector<double> hessian;
  std::vector<double> probs;
};

DualObjective dual_objective(const me::MaxEntProblem& problem, std::span<const double> xi);

struct NewtonOptions {
  double tol = 1e-12;
  std::size_t max_iterations = 200;
};

/// Damped Newton from xi = 0 with Armijo backtracking (factor 1/2, c = 1e-4).
/// Throws InfeasibleError/BoundaryError for targets not inside the hull,
/// ConditioningError when the covariance is singular, ConvergenceError when
/// max_iterations is exhausted.
BaselineResult newton_dual(const me::MaxEntProblem& problem, const NewtonOptions& options = {});

struct GisOptions {
  double tol = 1e-11;
  std::size_t max_iterations = 2'000'000;
};

/// Generalized iterative scaling after shifting features to be nonnegative
/// and adding a slack feature so that every column sums to C. Starts from the
/// prior. Throws ConvergenceError with the last iterate on exhaustion.
BaselineResult gis(const me::MaxEntProblem& problem, const GisOptions& options = {});

}  // namespace maxent::baseline

#include "maxent/baseline/baseline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/error.hpp"
#include "maxent/model/feasibility.hpp"
#include "maxent/model/functionals.hpp"

namespace maxent::baseline {

using me::MaxEntProblem;

namespace {

std::vector<double> prior_weights(const MaxEntProblem& problem) {
  std::vector<double> w;
  for (const auto& r : problem.prior_or_uniform()) w.push_back(r.to_double());
  return w;
}

double inf_norm(const std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

me::Solution make_solution(const MaxEntProblem& problem, me::Method method,
                           std::vector<double> theta) {
  me::Solution sol;
  sol.method = method;
  sol.theta = std::move(theta);
  sol.distribution =
      me::parametrize(sol.theta, problem.features(), prior_weights(problem), &sol.normalizer);
  me::fill_summary(sol, problem);
  return sol;
}

}  // namespace

DualObjective dual_objective(const MaxEntProblem& problem, std::span<const double> xi) {
  const std::size_t d = problem.d(), m = problem.m();
  if (xi.size() != d) throw InvalidArgument("xi has the wrong length");
  const auto targets = problem.effective_targets();
  const auto r = problem.prior_or_uniform();

  std::vector<long double> a(m);
  long double top = -std::numeric_limits<long double>::infinity();
  for (std::size_t j = 0; j < m; ++j) {
    long double s = std::log(static_cast<long double>(r[j].to_double()));
    for (std::size_t i = 0; i < d; ++i) s -= static_cast<long double>(xi[i]) * problem.feature(i, j);
    a[j] = s;
    top = std::max(top, s);
  }
  long double z = 0;
  std::vector<long double> p(m);
  for (std::size_t j = 0; j < m; ++j) z += (p[j] = std::exp(a[j] - top));
  for (auto& v : p) v /= z;

  DualObjective out;
  long double value = top + std::log(z);
  std::vector<long double> mean(d, 0.0L);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < m; ++j) mean[i] += p[j] * problem.feature(i, j);
    value += static_cast<long double>(xi[i]) * targets[i].to_double();
  }
  out.value = static_cast<double>(value);
  for (std::size_t i = 0; i < d; ++i)
    out.gradient.push_back(static_cast<double>(targets[i].to_double() - mean[i]));
  out.hessian.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      long double c = 0;
      for (std::size_t j = 0; j < m; ++j)
        c += p[j] * (problem.feature(i, j) - mean[i]) * (problem.feature(k, j) - mean[k]);
      out.hessian[i * d + k] = static_cast<double>(c);
    }
  for (auto v : p) out.probs.push_back(static_cast<double>(v));
  return out;
}

BaselineResult newton_dual(const MaxEntProblem& problem, const NewtonOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::size_t d = problem.d();
  const auto targets = problem.effective_targets();
  me::require_interior(problem.features(), targets);

  BaselineResult res;
  std::vector<double> xi(d, 0.0);
  DualObjective cur = dual_objective(problem, xi);
  for (;;) {
    res.report.gradient_norm = inf_norm(cur.gradient);
    if (res.report.gradient_norm <= options.tol) {
      res.report.converged = true;
      break;
    }
    if (res.report.iterations == options.max_iterations)
      throw ConvergenceError("newton did not converge within " +
                                 std::to_string(options.max_iterations) + " iterations",
                             cur.probs, res.report.iterations);
    Eigen::MatrixXd h(d, d);
    Eigen::VectorXd g(d);
    for (std::size_t i = 0; i < d; ++i) {
      g(static_cast<Eigen::Index>(i)) = cur.gradient[i];
      for (std::size_t k = 0; k < d; ++k)
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = cur.hessian[i * d + k];
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    const double scale = std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
    const auto diag = ldlt.vectorD();
    if (ldlt.info() != Eigen::Success || diag.minCoeff() <= 1e-13 * scale)
      throw ConditioningError(
          "feature covariance is singular under the current distribution (linearly dependent "
          "features?)");
    Eigen::VectorXd step = ldlt.solve(-g);

    double slope = g.dot(step);
    double alpha = 1.0;
    std::vector<double> trial(d);
    DualObjective next;
    for (;;) {
      for (std::size_t i = 0; i < d; ++i) trial[i] = xi[i] + alpha * step(static_cast<Eigen::Index>(i));
      next = dual_objective(problem, trial);
      if (next.value <= cur.value + 1e-4 * alpha * slope) break;
      // Near the optimum the decrease is below rounding; accept a step that
      // still shrinks the gradient.
      if (alpha < 1e-10 || (alpha < 1.0 && inf_norm(next.gradient) < inf_norm(cur.gradient) &&
                            std::abs(next.value - cur.value) <= 1e-15 * (1 + std::abs(cur.value))))
        break;
      alpha *= 0.5;
      ++res.report.backtracks;
    }
    xi = trial;
    cur = std::move(next);
    ++res.report.iterations;
  }

  std::vector<double> theta;
  for (double x : xi) theta.push_back(std::exp(-x));
  res.solution = make_solution(problem, me::Method::newton, std::move(theta));
  res.solution.diagnostics.iterations = res.report.iterations;
  res.solution.diagnostics.gradient_norm = res.report.gradient_norm;
  return res;
}

BaselineResult gis(const MaxEntProblem& problem, const GisOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  const std::size_t d = problem.d(), m = problem.m();
  const auto targets = problem.effective_targets();
  me::require_interior(problem.features(), targets);

  // Shifted features t'_i = t_i - min t_i, slack C - sum_i t'_i.
  std::vector<std::vector<long>> tp(d, std::vector<long>(m));
  std::vector<long double> tt(d);
  long c = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const long lo = *std::min_element(problem.features()[i].begin(), problem.features()[i].end());
    for (std::size_t j = 0; j < m; ++j) tp[i][j] = problem.feature(i, j) - lo;
    tt[i] = (targets[i] - num::Rational(lo)).to_double();
  }
  for (std::size_t j = 0; j < m; ++j) {
    long s = 0;
    for (std::size_t i = 0; i < d; ++i) s += tp[i][j];
    c = std::max(c, s);
  }
  std::vector<long> slack(m);
  bool has_slack = false;
  {
    num::Rational slack_target(c);
    for (std::size_t i = 0; i < d; ++i) slack_target -= targets[i] - num::Rational(
        *std::min_element(problem.features()[i].begin(), problem.features()[i].end()));
    for (std::size_t j = 0; j < m; ++j) {
      long s = c;
      for (std::size_t i = 0; i < d; ++i) s -= tp[i][j];
      slack[j] = s;
      has_slack = has_slack || s != 0;
    }
    if (has_slack) {
      tp.push_back(slack);
      tt.push_back(slack_target.to_double());
    }
  }
  const std::size_t rows = tp.size();

  BaselineResult res;
  std::vector<long double> lambda(rows, 0.0L);
  std::vector<long double> log_r(m);
  {
    auto w = prior_weights(problem);
    for (std::size_t j = 0; j < m; ++j) log_r[j] = std::log(static_cast<long double>(w[j]));
  }
  std::vector<long double> p(m);
  auto update_p = [&] {
    long double top = -std::numeric_limits<long double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      long double s = log_r[j];
      for (std::size_t i = 0; i < rows; ++i) s += lambda[i] * tp[i][j];
      p[j] = s;
      top = std::max(top, s);
    }
    long double z = 0;
    for (auto& v : p) z += (v = std::exp(v - top));
    for (auto& v : p) v /= z;
  };
  update_p();

  const long double inv_c = c > 0 ? 1.0L / c : 0.0L;
  std::vector<long double> moment(rows);
  for (;;) {
    double worst = 0.0;
    for (std::size_t i = 0; i < rows; ++i) {
      long double e = 0;
      for (std::size_t j = 0; j < m; ++j) e += p[j] * tp[i][j];
      moment[i] = e;
      if (i < d) worst = std::max(worst, static_cast<double>(std::abs(e - tt[i])));
    }
    res.report.gradient_norm = worst;
    if (worst <= options.tol) {
      res.report.converged = true;
      break;
    }
    if (res.report.iterations == options.max_iterations) {
      std::vector<double> last(p.begin(), p.end());
      throw ConvergenceError("gis did not converge within " +
                                 std::to_string(options.max_iterations) + " iterations",
                             std::move(last), res.report.iterations);
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (tt[i] <= 0 || moment[i] <= 0) continue;  // constant row, nothing to fit
      lambda[i] += inv_c * (std::log(tt[i]) - std::log(moment[i]));
    }
    update_p();
    ++res.report.iterations;
  }

  // log p_j = log r_j + sum_i (lambda_i - lambda_slack) t_i(j) + const.
  const long double ls = has_slack ? lambda.back() : 0.0L;
  std::vector<double> theta;
  for (std::size_t i = 0; i < d; ++i) theta.push_back(static_cast<double>(std::exp(lambda[i] - ls)));
  res.solution = make_solution(problem, me::Method::gis, std::move(theta));
  res.solution.diagnostics.iterations = res.report.iterations;
  res.solution.diagnostics.gradient_norm = res.report.gradient_norm;
  res.solution.diagnostics.notes.push_back(
      "gis: features shifted to start at 0, C = " + std::to_string(c) +
      (has_slack ? ", slack feature added" : ", no slack needed"));
  return res;
}

}  // namespace maxent::baseline

#include "maxent/model/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "maxent/baseline/baseline.hpp"
#include "maxent/error.hpp"
#include "maxent/groebner/solve.hpp"
#include "maxent/kc/kc.hpp"
#include "maxent/model/feasibility.hpp"
#include "maxent/model/functionals.hpp"
#include "maxent/model/systems.hpp"

namespace maxent::me {

namespace {

bool maximizes_entropy(Method m) {
  return m == Method::direct || m == Method::dual || m == Method::sample_dual;
}

std::vector<Rational> base_weights(const MaxEntProblem& problem, Method method) {
  if (maximizes_entropy(method))
    return std::vector<Rational>(problem.m(), Rational(1L, static_cast<long>(problem.m())));
  return problem.prior_or_uniform();
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& x : v) out.push_back(x.to_double());
  return out;
}

double max_abs(const std::vector<double>& v) {
  double n = 0.0;
  for (double x : v) n = std::max(n, std::abs(x));
  return n;
}

// Small-denominator rational within 1e-12 relative of x, by continued fractions.
std::optional<Rational> nearby_rational(double x, long max_den = 1'000'000) {
  if (!(x > 0.0) || !std::isfinite(x) || x > 1e9 || x < 1e-9) return std::nullopt;
  long double v = x;
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  for (int it = 0; it < 64; ++it) {
    long double a = std::floor(v);
    if (a > 1e10) break;
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12 * x)
      return Rational(h1, k1);
    long double frac = v - a;
    if (frac < 1e-15L) break;
    v = 1.0L / frac;
  }
  return std::nullopt;
}

// Exact zero of the system when every coordinate is a small rational.
std::optional<std::vector<Rational>> exact_point(const PolySystem& sys,
                                                 const std::vector<double>& point) {
  std::vector<Rational> q;
  for (double x : point) {
    auto r = nearby_rational(x);
    if (!r) return std::nullopt;
    q.push_back(*r);
  }
  for (const auto& f : sys.equations)
    if (!f.evaluate(q).is_zero()) return std::nullopt;
  return q;
}

struct Candidate {
  std::vector<double> theta;
  std::optional<std::vector<Rational>> theta_exact;
  Distribution p;
  double normalizer = 1.0;
  double residual = 0.0;
  bool flipped = false;
};

Candidate make_candidate(const MaxEntProblem& problem, const std::vector<double>& theta,
                         const std::vector<double>& weights) {
  Candidate c;
  c.theta = theta;
  c.p = parametrize(theta, problem.features(), weights, &c.normalizer);
  c.residual = max_abs(residuals(c.p, problem));
  return c;
}

Solution algebraic(const MaxEntProblem& problem, Method method, const PolySystem& sys,
                   const EstimateOptions& options) {
  gb::SolveOptions solve_options;
  solve_options.groebner = options.groebner;
  const auto result = gb::solve_positive(sys.equations, std::max(options.tol, 1e-8), solve_options);

  Solution sol;
  sol.method = method;
  auto& diag = sol.diagnostics;
  diag.basis_size = result.diagnostics.basis_size;
  diag.groebner_pairs = result.diagnostics.groebner.pairs_considered;
  diag.groebner_max_degree = result.diagnostics.groebner.max_degree;
  diag.eliminant_degree = result.diagnostics.eliminant_degree;
  diag.root_count = result.solutions.size();
  if (result.solutions.empty())
    throw ConvergenceError("the " + std::string(to_string(sys.provenance)) +
                           " system returned no positive root for an interior target");

  const auto weights_exact = base_weights(problem, method);
  const auto weights = to_doubles(weights_exact);
  const long n = problem.samples() ? static_cast<long>(problem.samples()->size()) : 1;

  std::optional<Candidate> best;
  std::size_t best_index = 0;
  for (std::size_t k = 0; k < result.solutions.size(); ++k) {
    const auto& root = result.solutions[k].theta;
    Candidate cand;
    if (method == Method::sample_dual) {
      // Recovered p is proportional to theta~^{-N t(j)}; fall back to the
      // opposite orientation only if the residual check rejects it.
      std::vector<double> a, b;
      for (double y : root) {
        a.push_back(std::exp(-static_cast<double>(n) * std::log(y)));
        b.push_back(std::exp(static_cast<double>(n) * std::log(y)));
      }
      cand = make_candidate(problem, a, weights);
      if (cand.residual > 1e-6) {
        Candidate other = make_candidate(problem, b, weights);
        if (other.residual < cand.residual) {
          cand = std::move(other);
          cand.flipped = true;
        }
      }
      if (auto q = exact_point(sys, root)) {
        std::vector<Rational> t;
        for (const auto& y : *q) t.push_back(num::pow(y, cand.flipped ? n : -n));
        cand.theta_exact = std::move(t);
      }
    } else {
      cand = make_candidate(problem, root, weights);
      cand.theta_exact = exact_point(sys, root);
    }
    diag.roots.push_back(cand.theta);

    bool better = !best;
    if (best) {
      if (maximizes_entropy(method)) {
        better = entropy(cand.p) > entropy(best->p);
      } else {
        auto r = to_distribution(weights_exact);
        better = kl_divergence(cand.p, r) < kl_divergence(best->p, r);
      }
    }
    if (better) {
      best = std::move(cand);
      best_index = k;
    }
  }

  sol.theta = best->theta;
  sol.distribution = best->p;
  sol.normalizer = best->normalizer;
  diag.sign_flip = best->flipped;
  sol.certificates = result.solutions[best_index].certificates;
  if (best->theta_exact) {
    auto exact = parametrize_exact(*best->theta_exact, problem.features(), weights_exact);
    sol.distribution = to_distribution(exact);
    sol.theta = to_doubles(*best->theta_exact);
  }
  if (diag.root_count > 1)
    diag.notes.push_back(std::to_string(diag.root_count) +
                         " positive roots; kept the optimal one by the estimation criterion");
  return sol;
}

}  // namespace

Solution estimate(const MaxEntProblem& problem, Method method, const EstimateOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!problem.has_moments()) throw InvalidArgument("problem has neither targets nor samples");
  if (method == Method::sample_dual && !problem.samples())
    throw InvalidArgument("the sample-dual method needs observed samples");
  if (method == Method::min_i_div && !problem.prior())
    throw InvalidArgument("minimum I-divergence needs a prior distribution");

  const auto targets = problem.effective_targets();
  Solution sol;
  if (problem.d() == 0) {
    sol.method = method;
    sol.distribution = to_distribution(base_weights(problem, method));
  } else {
    require_interior(problem.features(), targets);
    switch (method) {
      case Method::direct:
        sol = algebraic(problem, method, build_direct_system(problem), options);
        break;
      case Method::dual:
        sol = algebraic(problem, method, build_dual_system(problem), options);
        break;
      case Method::sample_dual:
        sol = algebraic(problem, method, build_sample_dual_system(problem), options);
        break;
      case Method::min_i_div:
        sol = algebraic(problem, method, build_minidiv_system(problem), options);
        break;
      case Method::kc: {
        // Half the tolerance leaves room for re-deriving p from theta.
        kc::KCOptions o;
        o.tol = 0.5 * options.tol;
        o.max_cycles = options.max_cycles;
        o.certify = options.certify_kc;
        sol = kc::kc_run(problem, o);
        break;
      }
      case Method::newton: {
        baseline::NewtonOptions o;
        o.tol = std::min(options.tol, 1e-12);
        if (options.max_iterations) o.max_iterations = options.max_iterations;
        sol = baseline::newton_dual(problem, o).solution;
        break;
      }
      case Method::gis: {
        baseline::GisOptions o;
        o.tol = 0.5 * options.tol;
        if (options.max_iterations) o.max_iterations = options.max_iterations;
        sol = baseline::gis(problem, o).solution;
        break;
      }
    }
  }
  fill_summary(sol, problem);
  if (sol.max_abs_residual() > options.tol) {
    std::ostringstream msg;
    msg << to_string(method) << ": largest residual " << sol.max_abs_residual()
        << " exceeds the tolerance " << options.tol;
    throw ConvergenceError(msg.str(), sol.distribution.probs);
  }
  return sol;
}

Solution estimate(const MaxEntProblem& problem, Method method, double tol) {
  EstimateOptions options;
  options.tol = tol;
  return estimate(problem, method, options);
}

}  // namespace maxent::me

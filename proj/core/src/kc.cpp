#include "maxent/kc/kc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "maxent/error.hpp"
#include "maxent/model/functionals.hpp"
#include "maxent/model/systems.hpp"

namespace maxent::kc {

using me::Distribution;
using me::MaxEntProblem;
using num::Rational;

namespace {

// Weighted moment of (t - T) after tilting the weights by exp(u t), and its
// derivative (the tilted variance). Log-sum-exp keeps large |u| finite.
struct Tilted {
  long double f = 0.0L;
  long double df = 0.0L;
  long double log_z = 0.0L;
};

Tilted tilt(const std::vector<long double>& log_w, const std::vector<long>& t,
            const std::vector<long double>& c, long double u) {
  long double top = -std::numeric_limits<long double>::infinity();
  std::vector<long double> a(log_w.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    a[j] = log_w[j] + u * t[j];
    top = std::max(top, a[j]);
  }
  long double s0 = 0, s1 = 0, s2 = 0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    long double e = std::exp(a[j] - top);
    s0 += e;
    s1 += e * c[j];
    s2 += e * c[j] * c[j];
  }
  Tilted out;
  out.f = s1 / s0;
  out.df = s2 / s0 - out.f * out.f;
  out.log_z = top + std::log(s0);
  return out;
}

// Root of the increasing function u -> tilt(u).f.
long double solve_tilt(const std::vector<long double>& log_w, const std::vector<long>& t,
                       const std::vector<long double>& c) {
  auto f = [&](long double u) { return tilt(log_w, t, c, u).f; };
  long double f0 = f(0);
  if (f0 == 0) return 0;
  long double lo = 0, hi = 0;
  if (f0 > 0) {
    lo = -1;
    while (f(lo) > 0) {
      lo *= 2;
      if (lo < -1e6) throw ConvergenceError("kc step: failed to bracket the multiplier");
    }
  } else {
    hi = 1;
    while (f(hi) < 0) {
      hi *= 2;
      if (hi > 1e6) throw ConvergenceError("kc step: failed to bracket the multiplier");
    }
  }
  long double u = (lo + hi) / 2;
  for (int it = 0; it < 200; ++it) {
    Tilted v = tilt(log_w, t, c, u);
    if (v.f == 0) return u;
    (v.f > 0 ? hi : lo) = u;
    long double next = v.df > 0 ? u - v.f / v.df : (lo + hi) / 2;
    if (!(next > lo && next < hi)) next = (lo + hi) / 2;
    if (std::abs(next - u) <= 4 * std::numeric_limits<long double>::epsilon() * (1 + std::abs(u)))
      return next;
    u = next;
  }
  return u;
}

gb::IsolatingInterval certify_step(const std::vector<double>& weights, const std::vector<long>& t,
                                   const Rational& target, double zeta) {
  std::vector<poly::Term> terms;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    Rational c = Rational::from_double(weights[j]) * (Rational(t[j]) - target);
    if (!c.is_zero()) terms.push_back({poly::ExponentVector{static_cast<int>(t[j])}, c});
  }
  auto f = me::normalize_on_orthant(poly::Polynomial::from_terms(1, std::move(terms))).polynomial;
  auto roots = gb::sturm_isolate(f, gb::RootDomain::positive_only);
  if (roots.size() != 1)
    throw ArithmeticError("kc step: expected exactly one positive root, Sturm count is " +
                          std::to_string(roots.size()));
  auto u = gb::UniPoly::from_polynomial(roots.front().polynomial, 0);
  auto iv = roots.front().interval;
  Rational width = Rational::from_double(zeta * 1e-9);
  iv = gb::refine(u, iv, width);
  roots.front().interval = iv;
  const double lo = iv.low().to_double(), hi = iv.high().to_double();
  if (zeta < lo * (1 - 1e-12) || zeta > hi * (1 + 1e-12))
    throw ArithmeticError("kc step: numeric root lies outside its certified interval");
  return roots.front();
}

}  // namespace

KCState kc_init(const MaxEntProblem& problem) {
  KCState s;
  s.p = me::to_distribution(problem.prior_or_uniform());
  s.p.exact.reset();
  s.zeta.assign(problem.d(), 1.0);
  return s;
}

KCState kc_step(const KCState& state, const MaxEntProblem& problem, std::size_t i,
                bool certify) {
  if (i >= problem.d())
    throw InvalidArgument("constraint index " + std::to_string(i) + " out of range for d = " +
                          std::to_string(problem.d()));
  if (state.p.size() != problem.m() || state.zeta.size() != problem.d())
    throw InvalidArgument("kc state does not match the problem");
  const Rational target = problem.effective_targets()[i];
  const auto& row = problem.features()[i];
  const std::size_t m = problem.m();

  std::vector<long double> log_w(m), c(m);
  std::vector<long> t(row.begin(), row.end());
  bool below = false, above = false;
  for (std::size_t j = 0; j < m; ++j) {
    if (!(state.p.probs[j] > 0.0)) throw InvalidArgument("kc state must be strictly positive");
    log_w[j] = std::log(static_cast<long double>(state.p.probs[j]));
    Rational diff = Rational(t[j]) - target;
    c[j] = diff.to_double();
    below = below || diff.sign() < 0;
    above = above || diff.sign() > 0;
  }
  if (below != above)
    throw InfeasibleError("kc step on constraint " + std::to_string(i + 1) + ": target " +
                          target.to_string() + " is not strictly inside the feature range");

  const long double u = (below && above) ? solve_tilt(log_w, t, c) : 0.0L;
  const Tilted at = tilt(log_w, t, c, u);

  KCState next = state;
  next.iteration = state.iteration + 1;
  long double total = 0;
  std::vector<long double> w(m);
  for (std::size_t j = 0; j < m; ++j) {
    w[j] = std::exp(log_w[j] + u * t[j] - at.log_z);
    total += w[j];
  }
  for (std::size_t j = 0; j < m; ++j) next.p.probs[j] = static_cast<double>(w[j] / total);
  next.p.exact.reset();
  next.zeta[i] = static_cast<double>(std::exp(std::log(static_cast<long double>(state.zeta[i])) + u));
  next.normalizers.push_back(static_cast<double>(std::exp(at.log_z)));
  next.certificate.reset();
  if (certify)
    next.certificate =
        certify_step(state.p.probs, t, target, static_cast<double>(std::exp(u)));
  return next;
}

me::Solution kc_run(const MaxEntProblem& problem, const KCOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  KCState state = kc_init(problem);
  me::Solution sol;
  sol.method = me::Method::kc;

  auto converged = [&](const Distribution& p) {
    for (double r : me::residuals(p, problem))
      if (std::abs(r) > options.tol) return false;
    return true;
  };

  std::size_t cycles = 0;
  if (problem.d() > 0) {
    // Validates that targets or samples are present before iterating.
    (void)problem.effective_targets();
    bool done = false;
    while (!done) {
      if (cycles == options.max_cycles)
        throw ConvergenceError("kc did not converge within " + std::to_string(cycles) +
                                   " cycles",
                               state.p.probs, cycles);
      for (std::size_t i = 0; i < problem.d(); ++i) {
        state = kc_step(state, problem, i, options.certify);
        if (state.certificate) sol.certificates.push_back(*state.certificate);
      }
      ++cycles;
      done = converged(state.p);
    }
  }

  sol.theta = state.zeta;
  // Re-derive p from the accumulated multipliers so p = parametrize(theta).
  if (problem.d() > 0) {
    std::vector<double> weights;
    for (const auto& r : problem.prior_or_uniform()) weights.push_back(r.to_double());
    sol.distribution = me::parametrize(sol.theta, problem.features(), weights, &sol.normalizer);
    if (!converged(sol.distribution)) sol.distribution = state.p;
  } else {
    sol.distribution = me::to_distribution(problem.prior_or_uniform());
  }
  sol.diagnostics.cycles = cycles;
  sol.diagnostics.iterations = state.iteration;
  me::fill_summary(sol, problem);
  return sol;
}

}  // namespace maxent::kc

#include "maxent/model/systems.hpp"

#include <climits>

#include "maxent/error.hpp"
#include "maxent/model/functionals.hpp"

namespace maxent::me {

using poly::ExponentVector;
using poly::Polynomial;
using poly::Term;

namespace {

int checked_exponent(long e) {
  if (e > INT_MAX / 4 || e < -(INT_MAX / 4))
    throw SizeGuardError("exponent " + std::to_string(e) + " is too large to represent");
  return static_cast<int>(e);
}

ExponentVector column(const FeatureMatrix& t, std::size_t j) {
  ExponentVector e(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) e[i] = checked_exponent(t[i][j]);
  return e;
}

PolySystem finish(std::vector<Polynomial> raw, Provenance provenance) {
  PolySystem sys;
  sys.provenance = provenance;
  for (auto& f : raw) {
    auto cleared = normalize_on_orthant(f);
    sys.equations.push_back(std::move(cleared.polynomial));
    sys.shifts.push_back(std::move(cleared.shift));
  }
  return sys;
}

// sum_j w_j (t_i(j) - T_i) theta^{t(j)}
PolySystem moment_system(const MaxEntProblem& problem, const std::vector<Rational>& weights,
                         Provenance provenance) {
  const auto targets = problem.effective_targets();
  const std::size_t d = problem.d();
  std::vector<Polynomial> raw;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < problem.m(); ++j) {
      Rational c = weights[j] * (Rational(problem.feature(i, j)) - targets[i]);
      if (!c.is_zero()) terms.push_back({column(problem.features(), j), c});
    }
    raw.push_back(Polynomial::from_terms(d, std::move(terms)));
  }
  return finish(std::move(raw), provenance);
}

// Gradient of sum_j theta^{e_j}.
PolySystem gradient_system(std::size_t d, const std::vector<ExponentVector>& exps,
                           Provenance provenance) {
  std::vector<Term> terms;
  for (const auto& e : exps) terms.push_back({e, Rational(1)});
  Polynomial psi = Polynomial::from_terms(d, std::move(terms));
  std::vector<Polynomial> raw;
  for (std::size_t i = 0; i < d; ++i) raw.push_back(psi.partial(i));
  return finish(std::move(raw), provenance);
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::direct: return "direct";
    case Provenance::dual: return "dual";
    case Provenance::sample_dual: return "sample-dual";
    case Provenance::min_i_div: return "min-i-div";
  }
  return "unknown";
}

std::vector<std::string> PolySystem::variable_names() const {
  std::size_t n = equations.empty() ? 0 : equations.front().num_vars();
  return poly::default_names(n, "th");
}

poly::LaurentCleared normalize_on_orthant(const Polynomial& f) {
  const std::size_t n = f.num_vars();
  ExponentVector shift(n);
  if (f.is_zero()) return {f, shift};
  for (std::size_t k = 0; k < n; ++k) shift[k] = -f.min_exponent(k);
  return {f.shifted(shift), shift};
}

PolySystem build_direct_system(const MaxEntProblem& problem) {
  return moment_system(problem, std::vector<Rational>(problem.m(), Rational(1)),
                       Provenance::direct);
}

PolySystem build_minidiv_system(const MaxEntProblem& problem) {
  if (!problem.prior())
    throw InvalidArgument("minimum I-divergence needs a prior distribution");
  return moment_system(problem, *problem.prior(), Provenance::min_i_div);
}

PolySystem build_dual_system(const MaxEntProblem& problem) {
  const auto targets = problem.effective_targets();
  std::vector<long> t_int;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!targets[i].is_integer())
      throw ConventionError("target " + std::to_string(i + 1) + " = " + targets[i].to_string() +
                            " is not an integer; the dual form needs integer exponents. Use "
                            "the sample-dual or direct system instead");
    t_int.push_back(targets[i].numerator().get_si());
  }
  std::vector<ExponentVector> exps;
  for (std::size_t j = 0; j < problem.m(); ++j) {
    ExponentVector e(problem.d());
    for (std::size_t i = 0; i < problem.d(); ++i)
      e[i] = checked_exponent(problem.feature(i, j) - t_int[i]);
    exps.push_back(std::move(e));
  }
  return gradient_system(problem.d(), exps, Provenance::dual);
}

PolySystem build_sample_dual_system(const MaxEntProblem& problem) {
  if (!problem.samples())
    throw InvalidArgument("the sample-dual system needs observed samples");
  const auto sums = sample_sums(*problem.samples(), problem.features(), problem.m());
  std::vector<ExponentVector> exps;
  for (std::size_t j = 0; j < problem.m(); ++j) {
    ExponentVector e(problem.d());
    for (std::size_t i = 0; i < problem.d(); ++i)
      e[i] = checked_exponent(sums.sigma[i] - sums.n * problem.feature(i, j));
    exps.push_back(std::move(e));
  }
  return gradient_system(problem.d(), exps, Provenance::sample_dual);
}

}  // namespace maxent::me

#include "maxent/groebner/solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <numeric>
#include <string>

#include "maxent/error.hpp"
#include "maxent/groebner/fglm.hpp"

namespace maxent::gb {

using num::Rational;
using poly::ExponentVector;
using poly::Term;

namespace {

// Other generators of a layer must vanish to this many digits.
constexpr int kLayerDigits = 60;

// Real positive roots of sum_k c[k] x^k (c.back() != 0), Newton-polished.
std::vector<double> positive_real_roots(const std::vector<long double>& c) {
  const int deg = static_cast<int>(c.size()) - 1;
  std::vector<double> roots;
  if (deg < 1) return roots;
  std::vector<double> candidates;
  if (deg == 1) {
    candidates.push_back(static_cast<double>(-c[0] / c[1]));
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = static_cast<double>(-c[i] / c[deg]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const auto& ev = solver.eigenvalues();
    for (int i = 0; i < deg; ++i) {
      const double re = ev[i].real();
      const double im = ev[i].imag();
      if (std::abs(im) <= 1e-6 * std::max(1.0, std::abs(re))) candidates.push_back(re);
    }
  }
  for (double x : candidates) {
    long double r = x;
    for (int it = 0; it < 30; ++it) {
      long double v = 0.0L;
      long double dv = 0.0L;
      for (int k = deg; k >= 0; --k) {
        dv = dv * r + v;
        v = v * r + c[static_cast<std::size_t>(k)];
      }
      if (dv == 0.0L) break;
      const long double step = v / dv;
      r -= step;
      if (std::abs(step) <= 1e-19L * std::abs(r)) break;
    }
    if (r > 0.0L && std::isfinite(static_cast<double>(r))) roots.push_back(static_cast<double>(r));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// Back-substitution runs in multiprecision floats. Lex bases of dense systems
// carry huge coefficients, and evaluating them in double near a root cancels
// away every significant digit.
constexpr mp_bitcnt_t kBits = 1024;
using Big = mpf_class;

Big big(const Rational& q) { return Big(q.raw(), kBits); }

Big power(const Big& x, int e) {
  Big r(0, kBits);
  mpf_pow_ui(r.get_mpf_t(), x.get_mpf_t(), static_cast<unsigned long>(e));
  return r;
}

const Big& tiny(int decimal_digits) {
  static std::map<int, Big> cache;
  auto it = cache.find(decimal_digits);
  if (it == cache.end()) {
    Big v(1, kBits);
    mpf_div(v.get_mpf_t(), v.get_mpf_t(), power(Big(10, kBits), decimal_digits).get_mpf_t());
    it = cache.emplace(decimal_digits, v).first;
  }
  return it->second;
}

// Coefficients in x_k of g after substituting the known coordinates
// y_{k+1..}. Coefficients that cancel to far below their term magnitudes are
// exactly zero at a true root and are set to zero.
std::vector<Big> specialize(const Polynomial& g, std::size_t k, const std::vector<Big>& y) {
  const std::size_t len = static_cast<std::size_t>(g.degree_in(k)) + 1;
  std::vector<Big> c(len, Big(0, kBits)), mag(len, Big(0, kBits));
  for (const auto& t : g.terms()) {
    Big v = big(t.coef);
    for (std::size_t j = k + 1; j < y.size(); ++j)
      if (t.exponents[j] != 0) v *= power(y[j], t.exponents[j]);
    const auto e = static_cast<std::size_t>(t.exponents[k]);
    c[e] += v;
    mag[e] += abs(v);
  }
  for (std::size_t e = 0; e < len; ++e)
    if (abs(c[e]) <= tiny(150) * mag[e]) c[e] = 0;
  return c;
}

// |g(y)| <= 10^-digits * sum_t |c_t y^t|
bool vanishes(const Polynomial& g, const std::vector<Big>& y, int digits) {
  Big value(0, kBits), mag(0, kBits);
  for (const auto& t : g.terms()) {
    Big v = big(t.coef);
    for (std::size_t j = 0; j < y.size(); ++j)
      if (t.exponents[j] != 0) v *= power(y[j], t.exponents[j]);
    value += v;
    mag += abs(v);
  }
  return abs(value) <= tiny(digits) * mag;
}

// Newton on sum_k c[k] x^k from x. Fails if the iteration leaves the
// positive axis or stalls far from a root.
std::optional<Big> newton_big(const std::vector<Big>& c, Big x) {
  Big v(0, kBits), dv(0, kBits), step(0, kBits);
  for (int it = 0; it < 400; ++it) {
    v = 0;
    dv = 0;
    for (std::size_t k = c.size(); k-- > 0;) {
      dv = dv * x + v;
      v = v * x + c[k];
    }
    if (v == 0) return x;
    if (dv == 0) return std::nullopt;
    step = v / dv;
    x -= step;
    if (x <= 0) return std::nullopt;
    if (abs(step) <= tiny(250) * x) return x;
  }
  // Linear convergence at a multiple root still gets far enough.
  if (abs(step) <= tiny(60) * x) return x;
  return std::nullopt;
}

// Positive roots of the specialized polynomial, seeded from a double
// companion solve and refined in full precision.
std::vector<Big> positive_roots_big(const std::vector<Big>& c) {
  Big scale(0, kBits);
  for (const auto& x : c) scale = std::max<Big>(scale, abs(x));
  std::vector<long double> seed;
  for (const auto& x : c) seed.push_back(static_cast<long double>(Big(x / scale).get_d()));
  std::vector<Big> out;
  for (double guess : positive_real_roots(seed)) {
    auto r = newton_big(c, Big(guess, kBits));
    if (!r) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Big& o) {
      return abs(o - *r) <= tiny(40) * abs(o);
    });
    if (!dup) out.push_back(*r);
  }
  return out;
}

long double magnitude(const Polynomial& f, std::span<const double> point) {
  long double m = 0.0L;
  for (const auto& t : f.terms()) {
    long double v = std::abs(t.coef.to_double());
    for (std::size_t k = 0; k < point.size(); ++k) {
      if (t.exponents[k] != 0) v *= std::pow(static_cast<long double>(point[k]), t.exponents[k]);
    }
    m += v;
  }
  return m;
}

// Gauss-Newton on the square (or overdetermined) system, staying positive.
void polish(const std::vector<Polynomial>& system,
            const std::vector<std::vector<Polynomial>>& jacobian, std::vector<double>& y) {
  const std::size_t m = system.size();
  const std::size_t n = y.size();
  auto worst = [&](const std::vector<double>& p) {
    double r = 0.0;
    for (const auto& f : system) r = std::max(r, scaled_residual(f, p));
    return r;
  };
  double current = worst(y);
  for (int it = 0; it < 60 && current > 0.0; ++it) {
    Eigen::MatrixXd jac(m, n);
    Eigen::VectorXd rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double scale = std::max(1.0L, magnitude(system[i], y));
      rhs(static_cast<Eigen::Index>(i)) = -system[i].evaluate(std::span<const double>(y)) / scale;
      for (std::size_t j = 0; j < n; ++j) {
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            jacobian[i][j].evaluate(std::span<const double>(y)) / scale;
      }
    }
    const Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(rhs);
    if (!delta.allFinite()) return;
    double step = 1.0;
    bool improved = false;
    for (int half = 0; half < 30; ++half) {
      std::vector<double> trial = y;
      bool positive = true;
      for (std::size_t j = 0; j < n; ++j) {
        trial[j] += step * delta(static_cast<Eigen::Index>(j));
        positive = positive && trial[j] > 0.0;
      }
      if (positive) {
        const double r = worst(trial);
        if (r < current) {
          y = std::move(trial);
          current = r;
          improved = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!improved) return;
  }
}

bool lex_less(const std::vector<double>& a, const std::vector<double>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool nearly_equal(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > 1e-9 * std::max(1.0, std::abs(a[k]))) return false;
  }
  return true;
}

// Reduced lex basis (x1 > ... > xn) when the ideal is zero-dimensional.
// Lex directly is only cheap for one variable; otherwise go through grevlex
// and change the ordering on the finite-dimensional quotient.
std::optional<GroebnerBasis> zero_dimensional_lex(const std::vector<Polynomial>& system,
                                                  const GroebnerOptions& options) {
  const std::size_t n = system.front().num_vars();
  const MonomialOrder lex = MonomialOrder::lex(n);
  if (n == 1) return buchberger(system, lex, options);
  GroebnerBasis graded = buchberger(system, MonomialOrder::grevlex(n), options);
  if (graded.is_unit_ideal()) return graded;
  if (!is_zero_dimensional(graded)) return std::nullopt;
  GroebnerBasis converted = fglm(graded, lex, options.max_basis);
  if (options.on_basis) options.on_basis(converted);
  return converted;
}

// The system in variables (z, y_1..y_n) together with z * y_1 ... y_n - 1.
std::vector<Polynomial> saturate(const std::vector<Polynomial>& system) {
  const std::size_t n = system.front().num_vars();
  std::vector<Polynomial> out;
  for (const auto& f : system) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
      ExponentVector e(n + 1);
      for (std::size_t k = 0; k < n; ++k) e[k + 1] = t.exponents[k];
      terms.push_back({std::move(e), t.coef});
    }
    out.push_back(Polynomial::from_terms(n + 1, std::move(terms)));
  }
  ExponentVector all(n + 1);
  for (std::size_t k = 0; k <= n; ++k) all[k] = 1;
  out.push_back(Polynomial::from_terms(
      n + 1, {{std::move(all), Rational(1)}, {ExponentVector(n + 1), Rational(-1)}}));
  return out;
}

}  // namespace

double scaled_residual(const Polynomial& f, std::span<const double> point) {
  const long double scale = std::max(1.0L, magnitude(f, point));
  return static_cast<double>(std::abs(static_cast<long double>(f.evaluate(point))) / scale);
}

SolveResult solve_positive(std::span<const Polynomial> system, double tol,
                           const SolveOptions& options) {
  if (system.empty()) throw DimensionError("no equations: the solution set is not zero-dimensional");
  if (!(tol > 0.0)) throw InvalidArgument("solve tolerance must be positive");
  const std::size_t n = system[0].num_vars();
  if (n == 0) throw InvalidArgument("system has no variables");

  std::vector<Polynomial> cleared;
  for (const auto& f : system) {
    if (f.num_vars() != n) throw InvalidArgument("system polynomials differ in dimension");
    if (f.is_zero()) continue;
    cleared.push_back(poly::laurent_clear(f).polynomial);
  }
  if (cleared.empty()) throw DimensionError("all equations vanish identically");

  SolveResult result;
  auto& diag = result.diagnostics;
  // A nonzero constant equation has no zeros at all.
  if (std::any_of(cleared.begin(), cleared.end(), [](const Polynomial& f) { return f.is_constant(); }))
    return result;

  // x_k -> y_k = x_k^g_k is a bijection of the positive half-line
  std::vector<int> gcds(n, 0);
  for (const auto& f : cleared) {
    for (const auto& t : f.terms()) {
      for (std::size_t k = 0; k < n; ++k) gcds[k] = std::gcd(gcds[k], t.exponents[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (gcds[k] == 0) {
      throw DimensionError("variable " + std::to_string(k + 1) +
                           " is unconstrained: the solution set is not zero-dimensional");
    }
  }
  diag.exponent_gcd = gcds;
  std::vector<Polynomial> folded;
  for (const auto& f : cleared) {
    std::vector<Term> terms;
    for (const auto& t : f.terms()) {
      ExponentVector e(n);
      for (std::size_t k = 0; k < n; ++k) e[k] = t.exponents[k] / gcds[k];
      terms.push_back({std::move(e), t.coef});
    }
    folded.push_back(Polynomial::from_terms(n, std::move(terms)));
  }

  // Components on the coordinate hyperplanes carry no positive zeros but can
  // make the ideal positive-dimensional. Then saturate: a new leading variable
  // z with z * y_1 ... y_n = 1 removes them.
  std::vector<Polynomial> work = folded;
  std::size_t offset = 0;
  std::optional<GroebnerBasis> found = zero_dimensional_lex(work, options.groebner);
  if (!found) {
    work = saturate(folded);
    offset = 1;
    found = zero_dimensional_lex(work, options.groebner);
    if (!found)
      throw DimensionError(
          "ideal is not zero-dimensional: the zero set has a positive-dimensional component in "
          "the torus");
  }
  GroebnerBasis basis = std::move(*found);
  const std::size_t nv = n + offset;
  diag.saturated = offset == 1;
  diag.basis_size = basis.generators.size();
  diag.groebner = basis.stats;
  if (basis.is_unit_ideal()) return result;

  // layers[k]: generators whose highest-ranked variable is x_k
  std::vector<std::vector<Polynomial>> layers(nv);
  for (const auto& g : basis.generators) {
    for (std::size_t k = 0; k < nv; ++k) {
      if (g.involves(k)) {
        layers[k].push_back(g);
        break;
      }
    }
  }
  for (auto& layer : layers) {
    std::stable_sort(layer.begin(), layer.end(), [](const Polynomial& a, const Polynomial& b) {
      return a.size() < b.size();
    });
  }
  if (layers[nv - 1].size() != 1) {
    throw DimensionError("no unique univariate eliminant in the last variable");
  }
  const Polynomial& eliminant = layers[nv - 1].front();
  diag.eliminant_degree = eliminant.degree_in(nv - 1);

  const auto certificates = sturm_isolate(eliminant, RootDomain::positive_only);
  diag.positive_roots_last = certificates.size();

  struct Partial {
    std::vector<Big> y;
    std::size_t certificate;
  };
  std::vector<Partial> partials;
  {
    const UniPoly elim_uni = UniPoly::from_polynomial(eliminant, nv - 1);
    std::vector<Big> elim;
    for (const auto& q : elim_uni.coeffs()) elim.push_back(big(q));
    for (std::size_t c = 0; c < certificates.size(); ++c) {
      const auto& iv = certificates[c].interval;
      const UniPoly p = UniPoly::from_polynomial(certificates[c].polynomial, nv - 1);
      Big root(refine_to_double(p, iv), kBits);
      if (auto r = newton_big(elim, root); r && *r >= big(iv.low()) && *r <= big(iv.high()))
        root = *r;
      std::vector<Big> y(nv, Big(0, kBits));
      y[nv - 1] = root;
      partials.push_back({std::move(y), c});
    }
  }

  for (std::size_t k = nv - 1; k-- > 0;) {
    auto& layer = layers[k];
    std::stable_sort(layer.begin(), layer.end(), [k](const Polynomial& a, const Polynomial& b) {
      return a.degree_in(k) < b.degree_in(k);
    });
    std::vector<Partial> next;
    for (const auto& partial : partials) {
      for (const auto& g : layer) {
        const auto c = specialize(g, k, partial.y);
        // Leading coefficient vanishes here: try the next generator.
        if (c.back() == 0) continue;
        for (const Big& root : positive_roots_big(c)) {
          Partial cand = partial;
          cand.y[k] = root;
          const bool consistent = std::all_of(layer.begin(), layer.end(), [&](const Polynomial& h) {
            return &h == &g || vanishes(h, cand.y, kLayerDigits);
          });
          if (consistent) next.push_back(std::move(cand));
        }
        break;
      }
    }
    partials = std::move(next);
  }
  diag.candidates = partials.size();

  std::vector<std::vector<Polynomial>> jacobian(work.size());
  for (std::size_t i = 0; i < work.size(); ++i) {
    for (std::size_t j = 0; j < nv; ++j) jacobian[i].push_back(work[i].partial(j));
  }

  for (auto& partial : partials) {
    std::vector<double> y;
    for (const auto& v : partial.y) y.push_back(v.get_d());
    if (nv > 1) polish(work, jacobian, y);
    PositiveSolution sol;
    sol.theta.resize(n);
    bool positive = true;
    for (std::size_t k = 0; k < n; ++k) {
      sol.theta[k] = gcds[k] == 1 ? y[k + offset] : std::pow(y[k + offset], 1.0 / gcds[k]);
      positive = positive && sol.theta[k] > 0.0 && std::isfinite(sol.theta[k]);
    }
    if (!positive) {
      ++diag.rejected;
      continue;
    }
    for (const auto& f : cleared) {
      sol.residual_norm = std::max(sol.residual_norm, scaled_residual(f, sol.theta));
    }
    if (sol.residual_norm > tol) {
      ++diag.rejected;
      continue;
    }
    sol.certificates.push_back(certificates[partial.certificate]);
    result.solutions.push_back(std::move(sol));
  }

  std::sort(result.solutions.begin(), result.solutions.end(),
            [](const PositiveSolution& a, const PositiveSolution& b) { return lex_less(a.theta, b.theta); });
  auto last = std::unique(result.solutions.begin(), result.solutions.end(),
                          [](const PositiveSolution& a, const PositiveSolution& b) {
                            return nearly_equal(a.theta, b.theta);
                          });
  result.solutions.erase(last, result.solutions.end());
  if (options.groebner.log) {
    options.groebner.log("solve_positive: eliminant degree " + std::to_string(diag.eliminant_degree) +
                         ", positive roots " + std::to_string(diag.positive_roots_last) +
                         ", solutions " + std::to_string(result.solutions.size()));
  }
  return result;
}

}  // namespace maxent::gb

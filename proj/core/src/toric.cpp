#include "maxent/model/toric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "maxent/error.hpp"

namespace maxent::me {

using num::BigInt;
using poly::ExponentVector;
using poly::MonomialOrder;
using poly::Polynomial;
using poly::Term;

std::size_t ToricSpec::m() const {
  if (!a.empty()) return a.front().size();
  return h.size();
}

std::vector<Rational> ToricSpec::weights() const {
  if (h.empty()) return std::vector<Rational>(m(), Rational(1));
  return h;
}

ToricSpec toric_spec_of(const MaxEntProblem& problem) {
  return ToricSpec{problem.features(), problem.prior_or_uniform()};
}

std::vector<gb::Polynomial> toric_ideal(const ToricSpec& spec,
                                        const gb::GroebnerOptions& options) {
  const std::size_t d = spec.a.size();
  const std::size_t m = spec.m();
  for (const auto& row : spec.a)
    if (row.size() != m) throw InvalidArgument("ragged matrix A");
  if (m > 8 || d > 5)
    throw SizeGuardError("toric ideal limited to m <= 8 and d <= 5 (got m = " +
                         std::to_string(m) + ", d = " + std::to_string(d) + ")");
  const auto h = spec.weights();
  if (h.size() != m) throw InvalidArgument("weights h have the wrong length");
  for (const auto& v : h)
    if (v.sign() <= 0) throw InvalidArgument("weights h must be strictly positive");

  bool negative = false;
  for (const auto& row : spec.a)
    for (long v : row) negative = negative || v < 0;

  // theta_1..theta_d > w > x_1..x_m under lex.
  const std::size_t x0 = d + (negative ? 1 : 0);
  const std::size_t nv = x0 + m;
  std::vector<Polynomial> gens;
  for (std::size_t j = 0; j < m; ++j) {
    ExponentVector plus(nv), minus(nv);
    for (std::size_t i = 0; i < d; ++i) {
      long v = spec.a[i][j];
      if (std::abs(v) > 64) throw SizeGuardError("entry of A exceeds the degree guard");
      (v >= 0 ? plus : minus)[i] = static_cast<int>(std::abs(v));
    }
    minus[x0 + j] += 1;
    gens.push_back(
        Polynomial::from_terms(nv, {Term{minus, Rational(1)}, Term{plus, -h[j]}}));
  }
  if (negative) {
    ExponentVector e(nv);
    for (std::size_t i = 0; i <= d; ++i) e[i] = 1;
    gens.push_back(Polynomial::from_terms(nv, {Term{e, Rational(1)},
                                               Term{ExponentVector(nv), Rational(-1)}}));
  }

  auto basis = gb::buchberger(gens, MonomialOrder::lex(nv), options);
  auto kept = gb::eliminate(basis, m);
  std::vector<std::size_t> target(nv, static_cast<std::size_t>(-1));
  for (std::size_t j = 0; j < m; ++j) target[x0 + j] = j;
  std::vector<gb::Polynomial> out;
  for (const auto& g : kept) out.push_back(g.remap(m, target).monic());
  return out;
}

namespace {

void normalize_sign(IntVector& u) {
  for (long v : u) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& x : u) x = -x;
    return;
  }
}

long to_long(const BigInt& z) {
  if (!z.fits_slong_p()) throw SizeGuardError("kernel vector entry overflows a machine integer");
  return z.get_si();
}

// Column operations with unimodular bookkeeping; the trailing columns of the
// transform span the kernel over Z.
std::vector<IntVector> kernel_by_column_reduction(const IntMatrix& a, std::size_t m) {
  const std::size_t r = a.size();
  std::vector<std::vector<BigInt>> mat(r, std::vector<BigInt>(m));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) mat[i][j] = a[i][j];
  std::vector<std::vector<BigInt>> u(m, std::vector<BigInt>(m));
  for (std::size_t j = 0; j < m; ++j) u[j][j] = 1;

  auto combine = [&](std::size_t k, std::size_t j, const BigInt& p, const BigInt& q,
                     const BigInt& s, const BigInt& t) {
    // col_k <- p col_k + q col_j ; col_j <- s col_k + t col_j
    auto apply = [&](std::vector<BigInt>& row) {
      BigInt ck = row[k], cj = row[j];
      row[k] = p * ck + q * cj;
      row[j] = s * ck + t * cj;
    };
    for (auto& row : mat) apply(row);
    for (auto& row : u) apply(row);
  };

  std::size_t k = 0;
  for (std::size_t i = 0; i < r && k < m; ++i) {
    for (std::size_t j = k + 1; j < m; ++j) {
      if (mat[i][j] == 0) continue;
      if (mat[i][k] == 0) {
        combine(k, j, 0, 1, 1, 0);
        continue;
      }
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), mat[i][k].get_mpz_t(),
                 mat[i][j].get_mpz_t());
      BigInt alpha = mat[i][k] / g, beta = mat[i][j] / g;
      combine(k, j, x, y, -beta, alpha);
    }
    if (mat[i][k] != 0) ++k;
  }

  std::vector<IntVector> out;
  for (std::size_t c = k; c < m; ++c) {
    IntVector v(m);
    for (std::size_t j = 0; j < m; ++j) v[j] = to_long(u[j][c]);
    normalize_sign(v);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::vector<IntVector> kernel_lattice(const IntMatrix& a) {
  const std::size_t r = a.size();
  if (r == 0) throw InvalidArgument("kernel_lattice needs at least one row");
  const std::size_t m = a.front().size();
  for (const auto& row : a)
    if (row.size() != m) throw InvalidArgument("ragged matrix");

  std::vector<std::vector<Rational>> rr(r, std::vector<Rational>(m));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < m; ++j) rr[i][j] = Rational(a[i][j]);

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m && row < r; ++c) {
    std::size_t p = row;
    while (p < r && rr[p][c].is_zero()) ++p;
    if (p == r) continue;
    std::swap(rr[p], rr[row]);
    Rational inv = Rational(1) / rr[row][c];
    for (auto& v : rr[row]) v *= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || rr[i][c].is_zero()) continue;
      Rational f = rr[i][c];
      for (std::size_t j = 0; j < m; ++j) rr[i][j] -= f * rr[row][j];
    }
    pivots.push_back(c);
    ++row;
  }

  std::vector<IntVector> out;
  bool integral = true;
  for (std::size_t f = 0; f < m; ++f) {
    if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
    std::vector<Rational> v(m);
    v[f] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rr[i][f];
    BigInt den = 1;
    for (const auto& x : v) {
      if (x.denominator() != 1) integral = false;
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.denominator().get_mpz_t());
    }
    std::vector<BigInt> iv;
    BigInt content = 0;
    for (const auto& x : v) {
      iv.push_back(x.numerator() * (den / x.denominator()));
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), iv.back().get_mpz_t());
    }
    IntVector u;
    for (auto& x : iv) u.push_back(to_long(x / content));
    normalize_sign(u);
    out.push_back(std::move(u));
  }
  // With fractional pivots the cleared vectors may span a proper sublattice;
  // fall back to a unimodular column reduction in that case.
  if (!integral) return kernel_by_column_reduction(a, m);
  return out;
}

MembershipResult toric_membership(const Distribution& p, const ToricSpec& spec, double tol) {
  const std::size_t m = spec.m();
  if (p.size() != m)
    throw InvalidArgument("distribution has " + std::to_string(p.size()) +
                          " entries, expected " + std::to_string(m));
  std::vector<long double> logs(m);
  const auto h = spec.weights();
  for (std::size_t j = 0; j < m; ++j) {
    if (!(p.probs[j] > 0.0))
      throw InvalidArgument("toric membership needs strictly positive probabilities (entry " +
                            std::to_string(j + 1) + " is " + std::to_string(p.probs[j]) + ")");
    logs[j] = std::log(static_cast<long double>(p.probs[j])) -
              std::log(static_cast<long double>(h[j].to_double()));
  }
  IntMatrix aug = spec.a;
  aug.push_back(IntVector(m, 1));

  MembershipResult out;
  out.member = true;
  for (const auto& u : kernel_lattice(aug)) {
    long double s = 0.0L;
    for (std::size_t j = 0; j < m; ++j) s += u[j] * logs[j];
    double v = static_cast<double>(std::abs(s));
    if (v > out.max_violation) {
      out.max_violation = v;
      if (v > tol) {
        out.member = false;
        out.witness = u;
      }
    }
  }
  return out;
}

}  // namespace maxent::me

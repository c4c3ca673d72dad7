#pragma once

#include <cstddef>
#include <vector>

#include "maxent/numkernel/rational.hpp"
#include "maxent/polyalg/polynomial.hpp"

namespace maxent::gb {

using num::Rational;

/// Dense univariate polynomial over Q; coeffs[k] multiplies x^k. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);

  /// Univariate view of `f` in variable `var`. Throws InvalidArgument if any
  /// other variable occurs or an exponent is negative.
  static UniPoly from_polynomial(const poly::Polynomial& f, std::size_t var);

  /// Back to a sparse polynomial in `num_vars` variables, using variable `var`.
  poly::Polynomial to_polynomial(std::size_t num_vars, std::size_t var) const;

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational evaluate(const Rational& x) const;
  double evaluate(double x) const;
  int sign_at(const Rational& x) const { return evaluate(x).sign(); }

  UniPoly derivative() const;
  UniPoly monic() const;
  UniPoly operator-() const;

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim();

  std::vector<Rational> c_;
};

struct UniDivision {
  UniPoly quotient;
  UniPoly remainder;
};

UniDivision divide(const UniPoly& a, const UniPoly& b);
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// p / gcd(p, p'): same distinct roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// Cauchy bound rounded up to a power of two: every root satisfies |x| < bound.
Rational root_bound(const UniPoly& p);

}  // namespace maxent::gb

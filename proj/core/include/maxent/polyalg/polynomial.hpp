#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxent/numkernel/rational.hpp"
#include "maxent/polyalg/monomial.hpp"

namespace maxent::poly {

using num::Rational;

struct Term {
  ExponentVector exponents;
  Rational coef;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept strictly descending under the polynomial's monomial order,
/// with no zero coefficients, so the leading term is `terms().front()`.
/// Negative exponents are allowed everywhere except where an operation states
/// otherwise (division, Gröbner routines).
class Polynomial {
 public:
  /// Zero polynomial in n variables, lex order x1 > ... > xn.
  explicit Polynomial(std::size_t num_vars = 0);
  Polynomial(std::size_t num_vars, MonomialOrder order);

  /// Combines duplicate exponents and drops zero coefficients.
  static Polynomial from_terms(std::size_t num_vars, std::vector<Term> terms,
                               MonomialOrder order);
  static Polynomial from_terms(std::size_t num_vars, std::vector<Term> terms);
  static Polynomial constant(std::size_t num_vars, const Rational& c);
  static Polynomial variable(std::size_t num_vars, std::size_t k);
  static Polynomial monomial(ExponentVector exponents, const Rational& c = Rational(1));

  std::size_t num_vars() const { return num_vars_; }
  const MonomialOrder& order() const { return order_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  /// Requires a nonzero polynomial.
  const Term& leading_term() const;
  const ExponentVector& leading_exponents() const { return leading_term().exponents; }
  const Rational& leading_coef() const { return leading_term().coef; }

  /// Same polynomial with terms re-sorted under another order.
  Polynomial with_order(const MonomialOrder& order) const;

  long total_degree() const;
  int degree_in(std::size_t k) const;
  int min_exponent(std::size_t k) const;
  bool is_laurent() const;
  /// True when variable k occurs with a nonzero exponent in some term.
  bool involves(std::size_t k) const;

  Polynomial monic() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial shifted(const ExponentVector& shift) const;
  /// Formal partial derivative; Laurent exponents differentiate as usual.
  Polynomial partial(std::size_t k) const;

  /// Removes and returns the leading term.
  Term pop_leading_term();

  /// this -= c * x^shift * g, in one merge pass.
  void subtract_scaled(const Rational& c, const ExponentVector& shift, const Polynomial& g);

  /// Exact evaluation. Throws ArithmeticError on a zero coordinate raised to a
  /// negative exponent.
  Rational evaluate(std::span<const Rational> point) const;
  /// Floating-point evaluation.
  double evaluate(std::span<const double> point) const;

  /// Moves variables: variable k goes to `target[k]` in a ring of `num_vars`.
  /// Variables whose target is npos must not occur.
  Polynomial remap(std::size_t num_vars, std::span<const std::size_t> target) const;

  std::string to_string(std::span<const std::string> names = {}) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  /// Equal as polynomials, independent of the stored order.
  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void check_compatible(const Polynomial& other) const;
  void add_signed(const Polynomial& other, bool negate);

  std::size_t num_vars_;
  MonomialOrder order_;
  std::vector<Term> terms_;
};

enum class PolyOp { add, sub, mul };

Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op);

struct LaurentCleared {
  Polynomial polynomial;
  ExponentVector shift;
};

/// Multiplies f by the smallest monomial x^e (e >= 0) that makes every
/// exponent nonnegative. Zero sets agree on the open positive orthant.
LaurentCleared laurent_clear(const Polynomial& f);

struct DivisionResult {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division: f = sum q_i d_i + r, with no term of r divisible by
/// any leading term of the divisors. Divisors are tried in list order.
DivisionResult multivariate_divide(const Polynomial& f, std::span<const Polynomial> divisors,
                                   const MonomialOrder& order);

/// Remainder only; skips quotient bookkeeping.
Polynomial reduce(const Polynomial& f, std::span<const Polynomial> divisors,
                  const MonomialOrder& order);

Rational evaluate(const Polynomial& f, std::span<const Rational> point);

/// Names x1..xn.
std::vector<std::string> default_names(std::size_t n, std::string_view prefix = "x");

/// Parses the textual form produced by `to_string`, e.g.
/// "3/2*x1^2*x2^-1 - x2 + 4". Identifiers must appear in `names`.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

}  // namespace maxent::poly

#pragma once

#include <vector>

#include "maxent/groebner/univariate.hpp"
#include "maxent/numkernel/dyadic_interval.hpp"
#include "maxent/polyalg/polynomial.hpp"

namespace maxent::gb {

enum class RootDomain { all_reals, positive_only };

/// Certified isolating interval: `polynomial` (square-free) has exactly one
/// real root strictly inside `interval`, and does not vanish at either end.
/// A degenerate interval means the root is the endpoint itself, found exactly.
struct IsolatingInterval {
  num::DyadicInterval interval;
  poly::Polynomial polynomial;
  bool multiplicity_free = true;
};

/// Signed remainder chain p, p', -rem(p, p'), ...
std::vector<UniPoly> sturm_chain(const UniPoly& p);

/// Number of sign variations of the chain at x (zeros skipped).
int sign_variations(const std::vector<UniPoly>& chain, const Rational& x);

/// Distinct real roots in the half-open interval (a, b].
int count_roots(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b);

/// Square-free part of u, with the factor x removed for the positive domain.
/// Isolating intervals certify roots of this polynomial.
UniPoly isolation_polynomial(const UniPoly& u, RootDomain domain);

/// Isolates every distinct real root of `u` in the domain, in increasing
/// order. `u` must be nonzero and involve at most one variable.
std::vector<IsolatingInterval> sturm_isolate(const poly::Polynomial& u, RootDomain domain);
std::vector<num::DyadicInterval> sturm_isolate(const UniPoly& u, RootDomain domain);

/// Bisects an isolating interval of the square-free `p` until its width is at
/// most `max_width` (or the root is hit exactly, giving a degenerate interval).
num::DyadicInterval refine(const UniPoly& p, num::DyadicInterval interval,
                           const Rational& max_width);

/// Root value to double precision.
double refine_to_double(const UniPoly& p, const num::DyadicInterval& interval);

}  // namespace maxent::gb

#pragma once

#include <cstddef>
#include <vector>

#include "maxent/groebner/buchberger.hpp"

namespace maxent::gb {

/// True when every variable has a pure power among the leading monomials,
/// i.e. the ideal has finitely many complex zeros (or is the unit ideal).
bool is_zero_dimensional(const GroebnerBasis& basis);

/// Monomials outside the leading-term ideal of a zero-dimensional basis,
/// increasing under the basis order. Throws DimensionError otherwise.
std::vector<poly::ExponentVector> standard_monomials(const GroebnerBasis& basis,
                                                     std::size_t max_count = 20000);

/// Change of ordering for a zero-dimensional ideal by linear algebra on the
/// quotient ring (Faugère, Gianni, Lazard, Mora). Returns the reduced basis
/// under `target`, carrying over the input statistics. Much cheaper than a
/// direct lex Buchberger run, where coefficients swell badly.
GroebnerBasis fglm(const GroebnerBasis& basis, const MonomialOrder& target,
                   std::size_t max_dimension = 20000);

}  // namespace maxent::gb

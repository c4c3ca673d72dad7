#pragma once

#include <utility>

#include "maxent/numkernel/rational.hpp"

namespace maxent::num {

/// Closed interval [low, high] with exact endpoints. Refinement only ever
/// takes midpoints, so dyadic endpoints stay dyadic.
class DyadicInterval {
 public:
  DyadicInterval(Rational low, Rational high);

  const Rational& low() const { return low_; }
  const Rational& high() const { return high_; }

  Rational width() const { return high_ - low_; }
  Rational midpoint() const;
  bool contains(const Rational& x) const { return low_ <= x && x <= high_; }
  bool is_degenerate() const { return low_ == high_; }

  /// Splits at the midpoint. Throws InvalidArgument when low == high.
  std::pair<DyadicInterval, DyadicInterval> bisect() const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

 private:
  Rational low_;
  Rational high_;
};

/// True when the denominator of x is a power of two.
bool is_dyadic(const Rational& x);

}  // namespace maxent::num

#include "maxent/numkernel/dyadic_interval.hpp"

#include "maxent/error.hpp"

namespace maxent::num {

DyadicInterval::DyadicInterval(Rational low, Rational high)
    : low_(std::move(low)), high_(std::move(high)) {
  if (high_ < low_) throw InvalidArgument("interval with low > high");
}

Rational DyadicInterval::midpoint() const { return (low_ + high_) / Rational(2); }

std::pair<DyadicInterval, DyadicInterval> DyadicInterval::bisect() const {
  if (is_degenerate()) throw InvalidArgument("cannot bisect a degenerate interval");
  Rational mid = midpoint();
  return {DyadicInterval(low_, mid), DyadicInterval(mid, high_)};
}

bool is_dyadic(const Rational& x) {
  const BigInt den = x.denominator();
  // power of two <=> exactly one bit set
  return mpz_popcount(den.get_mpz_t()) == 1;
}

}  // namespace maxent::num

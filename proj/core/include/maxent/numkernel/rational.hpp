#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace maxent::num {

using BigInt = mpz_class;

/// Exact rational number. Always stored reduced with a positive denominator,
/// so equality is field-wise.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
  Rational(const BigInt& value) : value_(value) {}  // NOLINT
  Rational(const BigInt& num, const BigInt& den);
  Rational(long num, long den);

  /// Accepts "n" or "n/d" with optional sign; throws ParseError otherwise.
  static Rational parse(std::string_view text);

  /// Exact value of a finite double.
  static Rational from_double(double value);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  double to_double() const { return value_.get_d(); }

  /// "num/den", or "num" when the denominator is one.
  std::string to_string() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& other);
  Rational& operator-=(const Rational& other);
  Rational& operator*=(const Rational& other);
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) {}

  mpq_class value_;
};

enum class ArithOp { add, sub, mul, div };

/// Dispatching form of the four field operations.
Rational rational_arith(const Rational& a, const Rational& b, ArithOp op);

Rational abs(const Rational& x);

/// x^e for any integer e; negative e requires x != 0.
Rational pow(const Rational& x, long e);

/// gcd(|numerator|, denominator) == 1 and denominator > 0.
bool is_canonical(const Rational& x);

std::ostream& operator<<(std::ostream& os, const Rational& x);

}  // namespace maxent::num

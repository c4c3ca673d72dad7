#include "maxent/numkernel/rational.hpp"

#include <cmath>
#include <ostream>

#include "maxent/error.hpp"

namespace maxent::num {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  BigInt num;
  BigInt den = 1;
  bool ok = false;
  if (slash == std::string_view::npos) {
    ok = parse_integer(text, num);
  } else {
    ok = parse_integer(trim(text.substr(0, slash)), num) &&
         parse_integer(trim(text.substr(slash + 1)), den);
    if (ok && den < 0) {
      ok = false;
    }
  }
  if (!ok) throw ParseError("malformed rational \"" + std::string(text) + "\"");
  if (den == 0) throw ArithmeticError("rational with zero denominator");
  return Rational(num, den);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite double");
  return Rational(mpq_class(value));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational& Rational::operator+=(const Rational& other) {
  value_ += other.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& other) {
  value_ -= other.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& other) {
  value_ *= other.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw ArithmeticError("division by zero");
  value_ /= other.value_;
  return *this;
}

Rational rational_arith(const Rational& a, const Rational& b, ArithOp op) {
  switch (op) {
    case ArithOp::add: return a + b;
    case ArithOp::sub: return a - b;
    case ArithOp::mul: return a * b;
    case ArithOp::div: return a / b;
  }
  throw InvalidArgument("unknown arithmetic operation");
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow(const Rational& x, long e) {
  if (e < 0) {
    if (x.is_zero()) throw ArithmeticError("zero raised to a negative power");
    return Rational(1) / pow(x, -e);
  }
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), x.numerator().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), x.denominator().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(num, den);
}

bool is_canonical(const Rational& x) {
  const BigInt den = x.denominator();
  if (den <= 0) return false;
  BigInt g;
  const BigInt num = x.numerator();
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return g == 1;
}

std::ostream& operator<<(std::ostream& os, const Rational& x) {
  return os << x.to_string();
}

}  // namespace maxent::num

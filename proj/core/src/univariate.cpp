#include "maxent/groebner/univariate.hpp"

#include "maxent/error.hpp"

namespace maxent::gb {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::from_polynomial(const poly::Polynomial& f, std::size_t var) {
  std::vector<Rational> c;
  for (const auto& t : f.terms()) {
    for (std::size_t k = 0; k < f.num_vars(); ++k) {
      if (k != var && t.exponents[k] != 0) {
        throw InvalidArgument("polynomial is not univariate in the requested variable");
      }
    }
    const int e = t.exponents[var];
    if (e < 0) throw InvalidArgument("univariate view requires nonnegative exponents");
    if (c.size() <= static_cast<std::size_t>(e)) c.resize(static_cast<std::size_t>(e) + 1);
    c[static_cast<std::size_t>(e)] += t.coef;
  }
  return UniPoly(std::move(c));
}

poly::Polynomial UniPoly::to_polynomial(std::size_t num_vars, std::size_t var) const {
  std::vector<poly::Term> terms;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    poly::ExponentVector e(num_vars);
    e[var] = static_cast<int>(k);
    terms.push_back({std::move(e), c_[k]});
  }
  return poly::Polynomial::from_terms(num_vars, std::move(terms));
}

Rational UniPoly::evaluate(const Rational& x) const {
  Rational acc(0);
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
  return acc;
}

double UniPoly::evaluate(double x) const {
  long double acc = 0.0L;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k].to_double();
  return static_cast<double>(acc);
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return {};
  const Rational inv = Rational(1) / leading();
  std::vector<Rational> c = c_;
  for (auto& v : c) v *= inv;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> c = c_;
  for (auto& v : c) v = -v;
  return UniPoly(std::move(c));
}

UniDivision divide(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw ArithmeticError("univariate division by zero");
  std::vector<Rational> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UniPoly(), a};
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  const Rational inv = Rational(1) / b.leading();
  for (int k = a.degree(); k >= db; --k) {
    const Rational c = rem[static_cast<std::size_t>(k)] * inv;
    if (c.is_zero()) continue;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
  UniPoly x = a;
  UniPoly y = b;
  while (!y.is_zero()) {
    UniPoly r = divide(x, y).remainder;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  const UniPoly g = gcd(p, p.derivative());
  return divide(p, g).quotient.monic();
}

Rational root_bound(const UniPoly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  for (int k = 0; k < p.degree(); ++k) {
    const Rational r = abs(p.coeffs()[static_cast<std::size_t>(k)] / p.leading());
    if (r > m) m = r;
  }
  const Rational cauchy = m + Rational(1);
  Rational bound(1);
  while (bound <= cauchy) bound *= Rational(2);
  return bound;
}

}  // namespace maxent::gb

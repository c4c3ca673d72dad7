#include "maxent/polyalg/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "maxent/error.hpp"

namespace maxent::poly {

namespace {

void sort_and_combine(std::vector<Term>& terms, const MonomialOrder& order) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.exponents, b.exponents) > 0;
  });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coef.is_zero()) out.pop_back();
  terms = std::move(out);
}

}  // namespace

Polynomial::Polynomial(std::size_t num_vars)
    : num_vars_(num_vars), order_(MonomialOrder::lex(num_vars)) {}

Polynomial::Polynomial(std::size_t num_vars, MonomialOrder order)
    : num_vars_(num_vars), order_(std::move(order)) {
  if (order_.num_vars() != num_vars_) {
    throw InvalidArgument("monomial order has the wrong number of variables");
  }
}

Polynomial Polynomial::from_terms(std::size_t num_vars, std::vector<Term> terms,
                                  MonomialOrder order) {
  Polynomial p(num_vars, std::move(order));
  for (const auto& t : terms) {
    if (t.exponents.size() != num_vars) {
      throw InvalidArgument("term has the wrong number of exponents");
    }
  }
  sort_and_combine(terms, p.order_);
  p.terms_ = std::move(terms);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t num_vars, std::vector<Term> terms) {
  return from_terms(num_vars, std::move(terms), MonomialOrder::lex(num_vars));
}

Polynomial Polynomial::constant(std::size_t num_vars, const Rational& c) {
  Polynomial p(num_vars);
  if (!c.is_zero()) p.terms_.push_back({ExponentVector(num_vars), c});
  return p;
}

Polynomial Polynomial::variable(std::size_t num_vars, std::size_t k) {
  if (k >= num_vars) throw InvalidArgument("variable index out of range");
  ExponentVector e(num_vars);
  e[k] = 1;
  return monomial(std::move(e));
}

Polynomial Polynomial::monomial(ExponentVector exponents, const Rational& c) {
  const std::size_t n = exponents.size();
  Polynomial p(n);
  if (!c.is_zero()) p.terms_.push_back({std::move(exponents), c});
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponents.is_zero());
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading term");
  return terms_.front();
}

Polynomial Polynomial::with_order(const MonomialOrder& order) const {
  if (order == order_) return *this;
  Polynomial p(num_vars_, order);
  p.terms_ = terms_;
  std::sort(p.terms_.begin(), p.terms_.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.exponents, b.exponents) > 0;
  });
  return p;
}

long Polynomial::total_degree() const {
  long d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents.total_degree());
  return d;
}

int Polynomial::degree_in(std::size_t k) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents[k]);
  return d;
}

int Polynomial::min_exponent(std::size_t k) const {
  int d = 0;
  bool first = true;
  for (const auto& t : terms_) {
    d = first ? t.exponents[k] : std::min(d, t.exponents[k]);
    first = false;
  }
  return d;
}

bool Polynomial::is_laurent() const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return !t.exponents.is_nonnegative(); });
}

bool Polynomial::involves(std::size_t k) const {
  return std::any_of(terms_.begin(), terms_.end(),
                     [k](const Term& t) { return t.exponents[k] != 0; });
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(Rational(1) / leading_coef());
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial p(num_vars_, order_);
  if (c.is_zero()) return p;
  p.terms_ = terms_;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Polynomial Polynomial::shifted(const ExponentVector& shift) const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.exponents += shift;
  return p;
}

Polynomial Polynomial::partial(std::size_t k) const {
  if (k >= num_vars_) throw InvalidArgument("variable index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exponents[k] == 0) continue;
    Term d = t;
    d.coef *= Rational(static_cast<long>(t.exponents[k]));
    d.exponents[k] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(num_vars_, std::move(out), order_);
}

void Polynomial::subtract_scaled(const Rational& c, const ExponentVector& shift,
                                 const Polynomial& g) {
  check_compatible(g);
  if (&g == this) {
    const Polynomial copy = g;
    subtract_scaled(c, shift, copy);
    return;
  }
  const Polynomial& src = g;
  const bool same_order = g.order_ == order_;
  const Polynomial reordered = same_order ? Polynomial(0) : g.with_order(order_);
  const auto& gterms = same_order ? src.terms_ : reordered.terms_;

  std::vector<Term> out;
  out.reserve(terms_.size() + gterms.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < gterms.size()) {
    if (j == gterms.size()) {
      out.push_back(std::move(terms_[i++]));
      continue;
    }
    ExponentVector e = gterms[j].exponents + shift;
    const int cmp = i < terms_.size() ? order_.compare(terms_[i].exponents, e) : -1;
    if (cmp > 0) {
      out.push_back(std::move(terms_[i++]));
    } else if (cmp < 0) {
      out.push_back({std::move(e), -(c * gterms[j].coef)});
      ++j;
    } else {
      Rational v = terms_[i].coef - c * gterms[j].coef;
      if (!v.is_zero()) out.push_back({std::move(e), std::move(v)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
}

Term Polynomial::pop_leading_term() {
  if (terms_.empty()) throw InvalidArgument("zero polynomial has no leading term");
  Term t = std::move(terms_.front());
  terms_.erase(terms_.begin());
  return t;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != num_vars_) throw InvalidArgument("point has the wrong dimension");
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coef;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      const int e = t.exponents[k];
      if (e == 0) continue;
      if (e < 0 && point[k].is_zero()) {
        throw ArithmeticError("zero coordinate under a negative exponent");
      }
      v *= pow(point[k], e);
    }
    sum += v;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != num_vars_) throw InvalidArgument("point has the wrong dimension");
  long double sum = 0.0L;
  for (const auto& t : terms_) {
    long double v = t.coef.to_double();
    for (std::size_t k = 0; k < num_vars_; ++k) {
      const int e = t.exponents[k];
      if (e != 0) v *= std::pow(static_cast<long double>(point[k]), e);
    }
    sum += v;
  }
  return static_cast<double>(sum);
}

Polynomial Polynomial::remap(std::size_t num_vars, std::span<const std::size_t> target) const {
  if (target.size() != num_vars_) throw InvalidArgument("remap table has the wrong size");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    ExponentVector e(num_vars);
    for (std::size_t k = 0; k < num_vars_; ++k) {
      if (t.exponents[k] == 0) continue;
      if (target[k] >= num_vars) throw InvalidArgument("remap drops a variable that occurs");
      e[target[k]] += t.exponents[k];
    }
    out.push_back({std::move(e), t.coef});
  }
  return from_terms(num_vars, std::move(out));
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
  std::vector<std::string> fallback;
  if (names.empty()) {
    fallback = default_names(num_vars_);
    names = fallback;
  }
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coef;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string factors;
    for (std::size_t k = 0; k < num_vars_; ++k) {
      const int e = t.exponents[k];
      if (e == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += names[k];
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += c.to_string();
    } else if (c == Rational(1)) {
      out += factors;
    } else {
      out += c.to_string() + "*" + factors;
    }
    first = false;
  }
  return out;
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (other.num_vars_ != num_vars_) {
    throw InvalidArgument("polynomials live in rings of different dimension");
  }
}

void Polynomial::add_signed(const Polynomial& other, bool negate) {
  check_compatible(other);
  subtract_scaled(negate ? Rational(1) : Rational(-1), ExponentVector(num_vars_), other);
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  add_signed(other, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  add_signed(other, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  std::vector<Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      products.push_back({s.exponents + t.exponents, s.coef * t.coef});
    }
  }
  return Polynomial::from_terms(a.num_vars_, std::move(products), a.order_);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.num_vars_ != b.num_vars_) return false;
  if (a.order_ == b.order_) return a.terms_ == b.terms_;
  return a.terms_ == b.with_order(a.order_).terms_;
}

Polynomial poly_arith(const Polynomial& f, const Polynomial& g, PolyOp op) {
  switch (op) {
    case PolyOp::add: return f + g;
    case PolyOp::sub: return f - g;
    case PolyOp::mul: return f * g;
  }
  throw InvalidArgument("unknown polynomial operation");
}

LaurentCleared laurent_clear(const Polynomial& f) {
  if (f.is_zero()) throw InvalidArgument("laurent_clear of the zero polynomial");
  ExponentVector shift(f.num_vars());
  for (std::size_t k = 0; k < f.num_vars(); ++k) {
    shift[k] = std::max(0, -f.min_exponent(k));
  }
  return {f.shifted(shift), shift};
}

namespace {

std::vector<Polynomial> prepare_divisors(std::span<const Polynomial> divisors,
                                         const MonomialOrder& order, std::size_t n) {
  std::vector<Polynomial> out;
  out.reserve(divisors.size());
  for (const auto& d : divisors) {
    if (d.num_vars() != n) throw InvalidArgument("divisor dimension mismatch");
    if (d.is_zero()) throw InvalidArgument("division by the zero polynomial");
    if (d.is_laurent()) throw InvalidArgument("division requires nonnegative exponents");
    out.push_back(d.with_order(order));
  }
  return out;
}

}  // namespace

DivisionResult multivariate_divide(const Polynomial& f, std::span<const Polynomial> divisors,
                                   const MonomialOrder& order) {
  if (f.is_laurent()) {
    throw InvalidArgument("division requires nonnegative exponents; laurent_clear first");
  }
  const std::size_t n = f.num_vars();
  const auto divs = prepare_divisors(divisors, order, n);
  DivisionResult result{std::vector<Polynomial>(divs.size(), Polynomial(n, order)),
                        Polynomial(n, order)};
  Polynomial p = f.with_order(order);
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    bool divided = false;
    for (std::size_t i = 0; i < divs.size(); ++i) {
      if (!divs[i].leading_exponents().divides(lt.exponents)) continue;
      const ExponentVector shift = lt.exponents - divs[i].leading_exponents();
      const Rational c = lt.coef / divs[i].leading_coef();
      result.quotients[i] -= Polynomial::monomial(shift, -c).with_order(order);
      p.subtract_scaled(c, shift, divs[i]);
      divided = true;
      break;
    }
    if (!divided) rem.push_back(p.pop_leading_term());
  }
  result.remainder = Polynomial::from_terms(n, std::move(rem), order);
  return result;
}

Polynomial reduce(const Polynomial& f, std::span<const Polynomial> divisors,
                  const MonomialOrder& order) {
  const std::size_t n = f.num_vars();
  const auto divs = prepare_divisors(divisors, order, n);
  Polynomial p = f.with_order(order);
  std::vector<Term> rem;
  // Peel off the leading term whenever it is irreducible.
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    bool divided = false;
    for (const auto& d : divs) {
      if (!d.leading_exponents().divides(lt.exponents)) continue;
      const ExponentVector shift = lt.exponents - d.leading_exponents();
      const Rational c = lt.coef / d.leading_coef();
      p.subtract_scaled(c, shift, d);
      divided = true;
      break;
    }
    if (!divided) rem.push_back(p.pop_leading_term());
  }
  return Polynomial::from_terms(n, std::move(rem), order);
}

Rational evaluate(const Polynomial& f, std::span<const Rational> point) {
  return f.evaluate(point);
}

std::vector<std::string> default_names(std::size_t n, std::string_view prefix) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t k = 0; k < n; ++k) names.push_back(std::string(prefix) + std::to_string(k + 1));
  return names;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::span<const std::string> names)
      : text_(text), names_(names) {}

  Polynomial parse() {
    const std::size_t n = names_.size();
    std::vector<Term> terms;
    skip_ws();
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = get() == '-';
    }
    while (true) {
      Term t = parse_term(n);
      if (negative) t.coef = -t.coef;
      terms.push_back(std::move(t));
      skip_ws();
      if (pos_ == text_.size()) break;
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-'");
      negative = op == '-';
    }
    return Polynomial::from_terms(n, std::move(terms));
  }

 private:
  Term parse_term(std::size_t n) {
    Term t{ExponentVector(n), Rational(1)};
    while (true) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        t.coef *= parse_number();
      } else if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
        const std::size_t var = parse_identifier();
        int e = 1;
        skip_ws();
        if (peek() == '^') {
          get();
          skip_ws();
          bool neg = false;
          if (peek() == '-') {
            neg = true;
            get();
          }
          e = static_cast<int>(parse_uint());
          if (neg) e = -e;
        }
        t.exponents[var] += e;
      } else {
        fail("expected a coefficient or a variable");
      }
      skip_ws();
      if (peek() != '*') break;
      get();
    }
    return t;
  }

  Rational parse_number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (peek() == '/') {
      ++pos_;
      const std::size_t den_start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      if (den_start == pos_) fail("missing denominator");
    }
    return Rational::parse(text_.substr(start, pos_ - start));
  }

  long parse_uint() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected an exponent");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  std::size_t parse_identifier() {
    const std::size_t start = pos_;
    while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);
    for (std::size_t k = 0; k < names_.size(); ++k) {
      if (names_[k] == id) return k;
    }
    fail("unknown variable '" + std::string(id) + "'");
    return 0;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial text at offset " + std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names) {
  return PolyParser(text, names).parse();
}

}  // namespace maxent::poly

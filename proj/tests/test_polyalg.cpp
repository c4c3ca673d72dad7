#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "maxent/error.hpp"
#include "maxent/polyalg/polynomial.hpp"

using namespace maxent::poly;
using maxent::num::Rational;

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kTheta{"th1", "th2"};

Polynomial xy(const char* text) { return parse_polynomial(text, kXY); }

Polynomial random_poly(std::mt19937& rng, std::size_t n, int terms, int max_exp) {
  std::uniform_int_distribution<int> e(0, max_exp);
  std::uniform_int_distribution<long> c(-5, 5);
  std::uniform_int_distribution<long> d(1, 4);
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    ExponentVector ev(n);
    for (std::size_t k = 0; k < n; ++k) ev[k] = e(rng);
    out.push_back({ev, Rational(c(rng), d(rng))});
  }
  return Polynomial::from_terms(n, std::move(out));
}

}  // namespace

TEST_CASE("poly_arith examples") {
  CHECK(poly_arith(xy("x + y"), xy("x - y"), PolyOp::mul) == xy("x^2 - y^2"));
  const Polynomial f = xy("3*x^2*y - 1/2*y + 7");
  CHECK(poly_arith(f, Polynomial(2), PolyOp::add) == f);
  const Polynomial one = poly_arith(xy("x^2*y + 1"), xy("x^2*y"), PolyOp::sub);
  CHECK(one == Polynomial::constant(2, Rational(1)));
  CHECK(one.size() == 1);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(Polynomial(2) + Polynomial(3), maxent::InvalidArgument);
  CHECK_THROWS_AS(Polynomial::variable(2, 0) * Polynomial::variable(3, 0),
                  maxent::InvalidArgument);
}

TEST_CASE("zero coefficients are never stored") {
  const Polynomial f = xy("x + y - x");
  CHECK(f.size() == 1);
  CHECK((f - f).is_zero());
  CHECK(f.to_string(kXY) == "y");
}

TEST_CASE("laurent_clear examples") {
  {
    const auto [p, e] = laurent_clear(parse_polynomial("th1^-2*th2 + th1", kTheta));
    CHECK(p == parse_polynomial("th2 + th1^3", kTheta));
    CHECK(e == ExponentVector{2, 0});
  }
  {
    const auto [p, e] = laurent_clear(parse_polynomial("th1 + th2", kTheta));
    CHECK(p == parse_polynomial("th1 + th2", kTheta));
    CHECK(e == ExponentVector{0, 0});
  }
  {
    const auto [p, e] = laurent_clear(parse_polynomial("th1^-1 - th2^-1", kTheta));
    CHECK(p == parse_polynomial("th2 - th1", kTheta));
    CHECK(e == ExponentVector{1, 1});
  }
  CHECK_THROWS_AS(laurent_clear(Polynomial(2)), maxent::InvalidArgument);
}

TEST_CASE("property: laurent_clear agrees with the shifted Laurent value on the orthant") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(-3, 3);
  std::uniform_int_distribution<long> c(-4, 4);
  std::uniform_int_distribution<long> pt(1, 9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Term> terms;
    for (int t = 0; t < 4; ++t) terms.push_back({ExponentVector{e(rng), e(rng)}, Rational(c(rng))});
    const Polynomial f = Polynomial::from_terms(2, terms);
    if (f.is_zero()) continue;
    const auto [cleared, shift] = laurent_clear(f);
    CHECK(!cleared.is_laurent());
    for (std::size_t k = 0; k < 2; ++k) {
      if (shift[k] > 0) CHECK(cleared.min_exponent(k) == 0);
    }
    const std::vector<Rational> point{Rational(pt(rng), pt(rng)), Rational(pt(rng), pt(rng))};
    const Rational scale = pow(point[0], shift[0]) * pow(point[1], shift[1]);
    CHECK(cleared.evaluate(std::span<const Rational>(point)) ==
          scale * f.evaluate(std::span<const Rational>(point)));
  }
}

TEST_CASE("multivariate_divide examples") {
  const MonomialOrder lex = MonomialOrder::lex(2);
  {
    const std::vector<Polynomial> divs{xy("x*y - 1"), xy("y^2 - 1")};
    const auto res = multivariate_divide(xy("x^2*y + x*y^2 + y^2"), divs, lex);
    CHECK(res.remainder == xy("x + y + 1"));
    CHECK(res.quotients[0] == xy("x + y"));
    CHECK(res.quotients[1] == xy("1"));
  }
  {
    const std::vector<Polynomial> divs{xy("x*y - 1")};
    CHECK(multivariate_divide(xy("x*y - 1"), divs, lex).remainder.is_zero());
  }
  {
    const std::vector<Polynomial> divs{xy("x")};
    CHECK(multivariate_divide(xy("1"), divs, lex).remainder == xy("1"));
  }
}

TEST_CASE("division rejects Laurent input and zero divisors") {
  const MonomialOrder lex = MonomialOrder::lex(2);
  const std::vector<Polynomial> divs{xy("x")};
  CHECK_THROWS_AS(multivariate_divide(xy("x^-1 + y"), divs, lex), maxent::InvalidArgument);
  const std::vector<Polynomial> zero{Polynomial(2)};
  CHECK_THROWS_AS(multivariate_divide(xy("x"), zero, lex), maxent::InvalidArgument);
}

TEST_CASE("property: division identity and reduced remainder") {
  std::mt19937 rng(3);
  for (const auto& order : {MonomialOrder::lex(3), MonomialOrder::grevlex(3),
                            MonomialOrder(MonomialOrder::Kind::lex, {2, 0, 1})}) {
    for (int trial = 0; trial < 60; ++trial) {
      const Polynomial f = random_poly(rng, 3, 6, 4);
      std::vector<Polynomial> divs;
      for (int i = 0; i < 3; ++i) {
        Polynomial d = random_poly(rng, 3, 3, 2);
        if (!d.is_zero()) divs.push_back(d);
      }
      if (divs.empty()) continue;
      const auto res = multivariate_divide(f, divs, order);
      Polynomial recombined = res.remainder;
      for (std::size_t i = 0; i < divs.size(); ++i) recombined += res.quotients[i] * divs[i];
      CHECK(recombined == f);
      for (const auto& t : res.remainder.terms()) {
        for (const auto& d : divs) {
          CHECK_FALSE(d.with_order(order).leading_exponents().divides(t.exponents));
        }
      }
      CHECK(reduce(f, divs, order) == res.remainder);
    }
  }
}

TEST_CASE("evaluate examples") {
  const std::vector<Rational> p23{Rational(2), Rational(3)};
  CHECK(evaluate(xy("x^2 + y"), p23) == Rational(7));
  const std::vector<std::string> x{"x"};
  const std::vector<Rational> half{Rational(1, 2)};
  CHECK(evaluate(parse_polynomial("x^-1", x), half) == Rational(2));
  const std::vector<Rational> cc{Rational(5, 7), Rational(5, 7)};
  CHECK(evaluate(xy("x - y"), cc).is_zero());
  const std::vector<Rational> zero{Rational(0)};
  CHECK_THROWS_AS(evaluate(parse_polynomial("x^-1", x), zero), maxent::ArithmeticError);
}

TEST_CASE("property: ring axioms") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Polynomial a = random_poly(rng, 2, 3, 3);
    const Polynomial b = random_poly(rng, 2, 3, 3);
    const Polynomial c = random_poly(rng, 2, 3, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a + b) - b == a);
  }
}

TEST_CASE("property: monomial orders are total, antisymmetric and multiplicative") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> e(0, 6);
  for (const auto& order : {MonomialOrder::lex(3), MonomialOrder::grevlex(3),
                            MonomialOrder(MonomialOrder::Kind::grevlex, {1, 2, 0})}) {
    for (int trial = 0; trial < 1000; ++trial) {
      const ExponentVector u{e(rng), e(rng), e(rng)};
      const ExponentVector v{e(rng), e(rng), e(rng)};
      const ExponentVector w{e(rng), e(rng), e(rng)};
      const int uv = order.compare(u, v);
      CHECK(uv == -order.compare(v, u));
      CHECK((uv == 0) == (u == v));
      if (uv < 0) CHECK(order.compare(u + w, v + w) < 0);
      CHECK(order.compare(ExponentVector(3), u) <= 0);
    }
  }
}

TEST_CASE("grevlex and lex break ties as usual") {
  const MonomialOrder grevlex = MonomialOrder::grevlex(3);
  // x*z^2 vs y^3: same degree, smaller last exponent wins
  CHECK(grevlex.greater(ExponentVector{0, 3, 0}, ExponentVector{1, 0, 2}));
  CHECK(MonomialOrder::lex(3).greater(ExponentVector{1, 0, 2}, ExponentVector{0, 3, 0}));
  CHECK_THROWS_AS(MonomialOrder(MonomialOrder::Kind::lex, {0, 0, 1}), maxent::InvalidArgument);
}

TEST_CASE("text format round-trips") {
  const std::vector<std::string> names = default_names(2);
  const Polynomial f = parse_polynomial("3/2*x1^2*x2^-1 - x2 + 4", names);
  CHECK(f.to_string(names) == "3/2*x1^2*x2^-1 - x2 + 4");
  CHECK(parse_polynomial(f.to_string(names), names) == f);
  CHECK(parse_polynomial("-x1*x2", names).to_string(names) == "-x1*x2");
  CHECK(Polynomial(2).to_string() == "0");
  CHECK_THROWS_AS(parse_polynomial("x3 + 1", names), maxent::ParseError);
  CHECK_THROWS_AS(parse_polynomial("x1 +", names), maxent::ParseError);
}

TEST_CASE("partial derivative of Laurent terms") {
  const Polynomial f = parse_polynomial("th1^-1 + th1*th2^2", kTheta);
  CHECK(f.partial(0) == parse_polynomial("-th1^-2 + th2^2", kTheta));
  CHECK(f.partial(1) == parse_polynomial("2*th1*th2", kTheta));
}

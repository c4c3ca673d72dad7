#include "maxent/groebner/sturm.hpp"

#include "maxent/error.hpp"

namespace maxent::gb {

using num::DyadicInterval;

std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p);
  UniPoly d = p.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    UniPoly r = divide(a, b).remainder;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  return chain;
}

int sign_variations(const std::vector<UniPoly>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

int count_roots(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

namespace {

// A dyadic point strictly inside (a, b) where p does not vanish; the midpoint
// unless it happens to be a root.
Rational split_point(const UniPoly& p, const Rational& a, const Rational& b) {
  const Rational w = b - a;
  for (long den = 2;; den *= 2) {
    for (long k = 1; k < den; k += 2) {
      const Rational c = a + w * Rational(k, den);
      if (p.sign_at(c) != 0) return c;
    }
  }
}

}  // namespace

UniPoly isolation_polynomial(const UniPoly& u, RootDomain domain) {
  if (u.is_zero()) throw InvalidArgument("root isolation of the zero polynomial");
  UniPoly p = squarefree_part(u);
  if (domain == RootDomain::positive_only && p.degree() >= 1 && p.coeffs()[0].is_zero()) {
    std::vector<Rational> c(p.coeffs().begin() + 1, p.coeffs().end());
    p = UniPoly(std::move(c));
  }
  return p;
}

std::vector<DyadicInterval> sturm_isolate(const UniPoly& u, RootDomain domain) {
  const UniPoly p = isolation_polynomial(u, domain);
  std::vector<DyadicInterval> out;
  if (p.degree() < 1) return out;

  const auto chain = sturm_chain(p);
  const Rational bound = root_bound(p);
  const Rational lo = domain == RootDomain::positive_only ? Rational(0) : -bound;

  struct Pending {
    Rational a, b;
    int count;
  };
  std::vector<Pending> stack{{lo, bound, count_roots(chain, lo, bound)}};
  while (!stack.empty()) {
    Pending cur = std::move(stack.back());
    stack.pop_back();
    if (cur.count == 0) continue;
    if (cur.count == 1) {
      out.emplace_back(cur.a, cur.b);
      continue;
    }
    const Rational c = split_point(p, cur.a, cur.b);
    const int left = count_roots(chain, cur.a, c);
    // right half pushed first so the left half is processed first
    stack.push_back({c, cur.b, cur.count - left});
    stack.push_back({cur.a, c, left});
  }
  return out;
}

std::vector<IsolatingInterval> sturm_isolate(const poly::Polynomial& u, RootDomain domain) {
  if (u.is_zero()) throw InvalidArgument("root isolation of the zero polynomial");
  std::size_t var = 0;
  for (std::size_t k = 0; k < u.num_vars(); ++k) {
    if (u.involves(k)) {
      var = k;
      break;
    }
  }
  const UniPoly p = UniPoly::from_polynomial(u, var);
  const UniPoly sqf = isolation_polynomial(p, domain);
  const poly::Polynomial sqf_poly = sqf.to_polynomial(u.num_vars(), var);
  const bool simple = squarefree_part(p).degree() == p.degree();
  std::vector<IsolatingInterval> out;
  for (auto& iv : sturm_isolate(sqf, domain)) {
    out.push_back({std::move(iv), sqf_poly, simple});
  }
  return out;
}

DyadicInterval refine(const UniPoly& p, DyadicInterval interval, const Rational& max_width) {
  if (interval.is_degenerate()) return interval;
  int sa = p.sign_at(interval.low());
  if (sa == 0) return {interval.low(), interval.low()};
  if (p.sign_at(interval.high()) == 0) return {interval.high(), interval.high()};
  while (interval.width() > max_width) {
    const Rational mid = interval.midpoint();
    const int sm = p.sign_at(mid);
    if (sm == 0) return {mid, mid};
    interval = sm == sa ? DyadicInterval(mid, interval.high()) : DyadicInterval(interval.low(), mid);
  }
  return interval;
}

double refine_to_double(const UniPoly& p, const DyadicInterval& interval) {
  DyadicInterval iv = interval;
  const Rational tiny = pow(Rational(2), -400);
  const Rational rel = pow(Rational(2), -60);
  while (!iv.is_degenerate()) {
    const Rational scale = std::max(abs(iv.low()), abs(iv.high()));
    if (iv.width() <= scale * rel || iv.width() <= tiny) break;
    // bisect in chunks so the relative scale keeps up with the interval
    iv = refine(p, iv, iv.width() / Rational(1 << 16));
  }
  return iv.midpoint().to_double();
}

}  // namespace maxent::gb

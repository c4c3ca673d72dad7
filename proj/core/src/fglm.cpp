#include "maxent/groebner/fglm.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "maxent/error.hpp"

namespace maxent::gb {

using num::Rational;
using poly::ExponentVector;
using poly::Term;

namespace {

using Key = std::vector<int>;
using Vec = std::vector<Rational>;

Key key_of(const ExponentVector& e) { return Key(e.values().begin(), e.values().end()); }

ExponentVector times_var(const ExponentVector& e, std::size_t k) {
  ExponentVector out = e;
  out[k] += 1;
  return out;
}

bool divisible_by_any(const ExponentVector& e, const std::vector<ExponentVector>& lms) {
  return std::any_of(lms.begin(), lms.end(),
                     [&](const ExponentVector& lm) { return lm.divides(e); });
}

}  // namespace

bool is_zero_dimensional(const GroebnerBasis& basis) {
  if (basis.generators.empty()) return false;
  if (basis.is_unit_ideal()) return true;
  const std::size_t n = basis.generators.front().num_vars();
  for (std::size_t k = 0; k < n; ++k) {
    const bool found = std::any_of(
        basis.generators.begin(), basis.generators.end(), [&](const Polynomial& g) {
          const auto& lm = g.leading_exponents();
          for (std::size_t j = 0; j < n; ++j)
            if (j != k && lm[j] != 0) return false;
          return lm[k] > 0;
        });
    if (!found) return false;
  }
  return true;
}

std::vector<ExponentVector> standard_monomials(const GroebnerBasis& basis,
                                               std::size_t max_count) {
  if (!is_zero_dimensional(basis))
    throw DimensionError("ideal is not zero-dimensional: the quotient ring is infinite");
  if (basis.is_unit_ideal()) return {};
  const std::size_t n = basis.generators.front().num_vars();
  std::vector<ExponentVector> lms;
  for (const auto& g : basis.generators) lms.push_back(g.leading_exponents());

  std::map<Key, ExponentVector> seen;
  std::vector<ExponentVector> frontier{ExponentVector(n)};
  seen.emplace(key_of(frontier.front()), frontier.front());
  while (!frontier.empty()) {
    ExponentVector e = frontier.back();
    frontier.pop_back();
    for (std::size_t k = 0; k < n; ++k) {
      ExponentVector next = times_var(e, k);
      if (divisible_by_any(next, lms)) continue;
      if (seen.emplace(key_of(next), next).second) {
        if (seen.size() > max_count)
          throw SizeGuardError("quotient ring dimension exceeds " + std::to_string(max_count));
        frontier.push_back(next);
      }
    }
  }
  std::vector<ExponentVector> out;
  for (auto& [k, e] : seen) out.push_back(e);
  std::sort(out.begin(), out.end(), [&](const ExponentVector& a, const ExponentVector& b) {
    return basis.order.compare(a, b) < 0;
  });
  return out;
}

GroebnerBasis fglm(const GroebnerBasis& basis, const MonomialOrder& target,
                   std::size_t max_dimension) {
  if (basis.is_unit_ideal()) {
    GroebnerBasis out = basis;
    out.order = target;
    out.generators = {Polynomial::constant(basis.generators.front().num_vars(), Rational(1))
                          .with_order(target)};
    return out;
  }
  const auto staircase = standard_monomials(basis, max_dimension);
  const std::size_t n = basis.generators.front().num_vars();
  const std::size_t dim = staircase.size();
  if (target.num_vars() != n) throw InvalidArgument("target order has the wrong arity");

  std::map<Key, std::size_t> index;
  for (std::size_t i = 0; i < dim; ++i) index.emplace(key_of(staircase[i]), i);

  auto to_vec = [&](const Polynomial& nf) {
    Vec v(dim);
    for (const auto& t : nf.terms()) v[index.at(key_of(t.exponents))] = t.coef;
    return v;
  };

  // mult[k][b]: normal form of x_k * staircase[b].
  std::vector<std::vector<Vec>> mult(n, std::vector<Vec>(dim));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t b = 0; b < dim; ++b) {
      auto m = Polynomial::monomial(times_var(staircase[b], k)).with_order(basis.order);
      mult[k][b] = to_vec(poly::reduce(m, basis.generators, basis.order));
    }
  auto apply = [&](std::size_t k, const Vec& v) {
    Vec out(dim);
    for (std::size_t b = 0; b < dim; ++b) {
      if (v[b].is_zero()) continue;
      for (std::size_t c = 0; c < dim; ++c)
        if (!mult[k][b][c].is_zero()) out[c] += v[b] * mult[k][b][c];
    }
    return out;
  };

  // Echelon rows: row[r] = sum_l trans[r][l] * nf(new_std[l]), row[r][pivot[r]] = 1.
  std::vector<Vec> rows, trans;
  std::vector<std::size_t> pivot;
  std::vector<ExponentVector> new_std;
  std::vector<ExponentVector> new_lms;
  std::vector<Polynomial> out;

  auto cmp = [&](const Key& a, const Key& b) {
    return target.compare(ExponentVector(a), ExponentVector(b)) < 0;
  };
  std::map<Key, Vec, decltype(cmp)> candidates(cmp);
  {
    ExponentVector one(n);
    candidates.emplace(key_of(one), to_vec(poly::reduce(
                                        Polynomial::monomial(one).with_order(basis.order),
                                        basis.generators, basis.order)));
  }

  while (!candidates.empty()) {
    auto node = candidates.extract(candidates.begin());
    const ExponentVector t(node.key());
    Vec v = std::move(node.mapped());
    if (divisible_by_any(t, new_lms)) continue;

    Vec w = v;
    Vec lambda(new_std.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational f = w[pivot[r]];
      if (f.is_zero()) continue;
      for (std::size_t c = 0; c < dim; ++c)
        if (!rows[r][c].is_zero()) w[c] -= f * rows[r][c];
      for (std::size_t l = 0; l < trans[r].size(); ++l)
        if (!trans[r][l].is_zero()) lambda[l] += f * trans[r][l];
    }
    auto nz = std::find_if(w.begin(), w.end(), [](const Rational& x) { return !x.is_zero(); });
    if (nz == w.end()) {
      // nf(t) = sum_l lambda_l nf(new_std[l])
      std::vector<Term> terms{{t, Rational(1)}};
      for (std::size_t l = 0; l < new_std.size(); ++l)
        if (!lambda[l].is_zero()) terms.push_back({new_std[l], -lambda[l]});
      out.push_back(Polynomial::from_terms(n, std::move(terms), target));
      new_lms.push_back(t);
      continue;
    }
    const std::size_t p = static_cast<std::size_t>(nz - w.begin());
    const Rational inv = Rational(1) / w[p];
    for (auto& x : w) x *= inv;
    Vec tr(new_std.size() + 1);
    for (std::size_t l = 0; l < new_std.size(); ++l) tr[l] = -lambda[l] * inv;
    tr.back() = inv;
    for (auto& old : trans) old.resize(new_std.size() + 1);
    rows.push_back(std::move(w));
    trans.push_back(std::move(tr));
    pivot.push_back(p);
    new_std.push_back(t);
    for (std::size_t k = 0; k < n; ++k) {
      ExponentVector next = times_var(t, k);
      if (divisible_by_any(next, new_lms)) continue;
      auto key = key_of(next);
      if (candidates.count(key)) continue;
      candidates.emplace(std::move(key), apply(k, v));
    }
  }

  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return target.compare(a.leading_exponents(), b.leading_exponents()) > 0;
  });
  GroebnerBasis result{std::move(out), target, basis.stats};
  result.stats.peak_basis = std::max(result.stats.peak_basis, result.generators.size());
  return result;
}

}  // namespace maxent::gb

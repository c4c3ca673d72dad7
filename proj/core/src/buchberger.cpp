#include "maxent/groebner/buchberger.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "maxent/error.hpp"

namespace maxent::gb {

using poly::ExponentVector;
using poly::Term;
using num::Rational;

namespace {

// Full reduction of p by divisors already sorted under p's order.
Polynomial normal_form(Polynomial p, const std::vector<Polynomial>& divisors,
                       std::size_t skip = static_cast<std::size_t>(-1)) {
  std::vector<Term> rem;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      if (i == skip) continue;
      const auto& d = divisors[i];
      if (!d.leading_exponents().divides(lt.exponents)) continue;
      const ExponentVector shift = lt.exponents - d.leading_exponents();
      const Rational c = lt.coef / d.leading_coef();
      p.subtract_scaled(c, shift, d);
      divided = true;
      break;
    }
    if (!divided) rem.push_back(p.pop_leading_term());
  }
  return Polynomial::from_terms(p.num_vars(), std::move(rem), p.order());
}

struct Pair {
  std::size_t i;
  std::size_t j;
  ExponentVector lcm;
  long degree;
};

std::string describe(const GroebnerStats& s, std::size_t basis_size) {
  return "pairs=" + std::to_string(s.pairs_considered) +
         " reduced=" + std::to_string(s.pairs_reduced) +
         " zero=" + std::to_string(s.zero_reductions) +
         " coprime_skips=" + std::to_string(s.coprime_skips) +
         " chain_skips=" + std::to_string(s.chain_skips) +
         " basis=" + std::to_string(basis_size) +
         " max_degree=" + std::to_string(s.max_degree);
}

void check_guards(const Polynomial& p, std::size_t basis_size, GroebnerStats& stats,
                  const GroebnerOptions& options) {
  const long deg = p.total_degree();
  stats.max_degree = std::max(stats.max_degree, deg);
  if (deg > options.max_degree) {
    throw SizeGuardError("Gröbner basis degree bound exceeded: degree " + std::to_string(deg) +
                         " > " + std::to_string(options.max_degree) + " (" +
                         describe(stats, basis_size) + ")");
  }
  if (basis_size > options.max_basis) {
    throw SizeGuardError("Gröbner basis size bound exceeded: " + std::to_string(basis_size) +
                         " > " + std::to_string(options.max_basis) + " (" +
                         describe(stats, basis_size) + ")");
  }
}

}  // namespace

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
  if (f.is_zero() || g.is_zero()) throw InvalidArgument("S-polynomial of a zero polynomial");
  if (f.is_laurent() || g.is_laurent()) {
    throw InvalidArgument("S-polynomial requires nonnegative exponents");
  }
  const Polynomial fo = f.with_order(order);
  const Polynomial go = g.with_order(order);
  const ExponentVector l = poly::lcm(fo.leading_exponents(), go.leading_exponents());
  Polynomial s = fo.scaled(Rational(1) / fo.leading_coef()).shifted(l - fo.leading_exponents());
  s.subtract_scaled(Rational(1) / go.leading_coef(), l - go.leading_exponents(), go);
  return s;
}

GroebnerBasis buchberger(std::span<const Polynomial> generators, const MonomialOrder& order,
                         const GroebnerOptions& options) {
  if (generators.empty()) throw InvalidArgument("Buchberger needs at least one generator");
  const std::size_t n = order.num_vars();
  GroebnerStats stats;
  std::vector<Polynomial> basis;
  for (const auto& f : generators) {
    if (f.num_vars() != n) throw InvalidArgument("generator dimension does not match the order");
    if (f.is_laurent()) throw InvalidArgument("Buchberger requires nonnegative exponents");
    if (f.is_zero()) continue;
    Polynomial g = f.with_order(order).monic();
    check_guards(g, basis.size() + 1, stats, options);
    if (g.is_constant()) {
      GroebnerBasis unit{{Polynomial::constant(n, Rational(1)).with_order(order)}, order, stats};
      if (options.on_basis) options.on_basis(unit);
      return unit;
    }
    basis.push_back(std::move(g));
  }
  if (basis.empty()) return {{}, order, stats};

  std::vector<Pair> queue;
  std::set<std::pair<std::size_t, std::size_t>> pending;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      ExponentVector l = poly::lcm(basis[i].leading_exponents(), basis[j].leading_exponents());
      const long deg = l.total_degree();
      queue.push_back({i, j, std::move(l), deg});
      pending.insert({i, j});
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) add_pairs_for(j);

  auto chain_criterion = [&](const Pair& p) {
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      if (!basis[k].leading_exponents().divides(p.lcm)) continue;
      if (pending.count({std::min(p.i, k), std::max(p.i, k)}) != 0) continue;
      if (pending.count({std::min(p.j, k), std::max(p.j, k)}) != 0) continue;
      return true;
    }
    return false;
  };

  while (!queue.empty()) {
    // normal strategy: smallest lcm degree, then smallest lcm, then indices
    auto best = std::min_element(queue.begin(), queue.end(), [&](const Pair& a, const Pair& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      const int c = order.compare(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    Pair pair = std::move(*best);
    queue.erase(best);
    pending.erase({pair.i, pair.j});
    ++stats.pairs_considered;

    if (poly::coprime(basis[pair.i].leading_exponents(), basis[pair.j].leading_exponents())) {
      ++stats.coprime_skips;
      continue;
    }
    if (chain_criterion(pair)) {
      ++stats.chain_skips;
      continue;
    }
    ++stats.pairs_reduced;
    Polynomial s = normal_form(s_polynomial(basis[pair.i], basis[pair.j], order), basis);
    if (s.is_zero()) {
      ++stats.zero_reductions;
      continue;
    }
    s = s.monic();
    check_guards(s, basis.size() + 1, stats, options);
    if (s.is_constant()) {
      if (options.log) options.log("buchberger: unit ideal; " + describe(stats, basis.size()));
      GroebnerBasis unit{{Polynomial::constant(n, Rational(1)).with_order(order)}, order, stats};
      if (options.on_basis) options.on_basis(unit);
      return unit;
    }
    basis.push_back(std::move(s));
    stats.peak_basis = std::max(stats.peak_basis, basis.size());
    add_pairs_for(basis.size() - 1);
    if (options.log && stats.pairs_reduced % 256 == 0) {
      options.log("buchberger: " + describe(stats, basis.size()));
    }
  }
  stats.peak_basis = std::max(stats.peak_basis, basis.size());

  // minimal basis: drop generators whose leading monomial is a multiple of another's
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < basis.size() && !redundant; ++k) {
      if (k == i) continue;
      const auto& lk = basis[k].leading_exponents();
      const auto& li = basis[i].leading_exponents();
      if (lk.divides(li) && (lk != li || k < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    reduced.push_back(normal_form(minimal[i], minimal, i).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.compare(a.leading_exponents(), b.leading_exponents()) > 0;
  });
  if (options.log) options.log("buchberger: done; " + describe(stats, reduced.size()));
  GroebnerBasis result{std::move(reduced), order, stats};
  if (options.on_basis) options.on_basis(result);
  return result;
}

bool satisfies_buchberger_criterion(const GroebnerBasis& basis) {
  const auto& g = basis.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!normal_form(s_polynomial(g[i], g[j], basis.order), g).is_zero()) return false;
    }
  }
  return true;
}

bool is_reduced(const GroebnerBasis& basis) {
  const auto& g = basis.generators;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].is_zero() || g[i].leading_coef() != Rational(1)) return false;
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (k == i) continue;
      for (const auto& t : g[i].terms()) {
        if (g[k].leading_exponents().divides(t.exponents)) return false;
      }
    }
  }
  return true;
}

std::vector<Polynomial> eliminate(const GroebnerBasis& basis, std::size_t keep_last) {
  if (basis.order.kind() != MonomialOrder::Kind::lex) {
    throw InvalidArgument("elimination needs a lexicographic basis");
  }
  const auto rank = basis.order.rank();
  if (keep_last > rank.size()) throw InvalidArgument("cannot keep more variables than exist");
  std::vector<Polynomial> out;
  for (const auto& g : basis.generators) {
    bool only_kept = true;
    for (std::size_t r = 0; r + keep_last < rank.size(); ++r) {
      if (g.involves(rank[r])) {
        only_kept = false;
        break;
      }
    }
    if (only_kept) out.push_back(g);
  }
  return out;
}

}  // namespace maxent::gb

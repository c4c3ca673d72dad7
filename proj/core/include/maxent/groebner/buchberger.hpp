#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "maxent/polyalg/polynomial.hpp"

namespace maxent::gb {

using poly::MonomialOrder;
using poly::Polynomial;

/// Receives one diagnostic line at a time (pair counts, degrees, sizes).
using LogSink = std::function<void(std::string_view)>;

struct GroebnerBasis;

struct GroebnerOptions {
  long max_degree = 64;
  std::size_t max_basis = 20000;
  LogSink log;
  /// Sees every basis handed back by buchberger and by the solver's FGLM step.
  std::function<void(const GroebnerBasis&)> on_basis;
};

struct GroebnerStats {
  std::size_t pairs_considered = 0;
  std::size_t pairs_reduced = 0;
  std::size_t coprime_skips = 0;
  std::size_t chain_skips = 0;
  std::size_t zero_reductions = 0;
  long max_degree = 0;
  std::size_t peak_basis = 0;
};

/// Reduced Gröbner basis: monic generators, none with a term divisible by the
/// leading term of another, sorted by decreasing leading monomial.
struct GroebnerBasis {
  std::vector<Polynomial> generators;
  MonomialOrder order;
  GroebnerStats stats;

  bool is_unit_ideal() const {
    return generators.size() == 1 && generators[0].is_constant();
  }
};

/// (lcm / lt(f)) f - (lcm / lt(g)) g over the leading monomials.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

/// Buchberger's algorithm with the normal selection strategy and the coprime
/// and chain criteria. Throws SizeGuardError when a degree or basis-size bound
/// is exceeded.
GroebnerBasis buchberger(std::span<const Polynomial> generators, const MonomialOrder& order,
                         const GroebnerOptions& options = {});

/// Every S-polynomial of a pair of generators reduces to zero.
bool satisfies_buchberger_criterion(const GroebnerBasis& basis);

/// Minimality and tail reduction, monic leading coefficients.
bool is_reduced(const GroebnerBasis& basis);

/// Basis elements that involve only the `keep_last` lowest-ranked variables
/// of a lexicographic basis: generators of the elimination ideal.
std::vector<Polynomial> eliminate(const GroebnerBasis& basis, std::size_t keep_last);

}  // namespace maxent::gb

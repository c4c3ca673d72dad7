#pragma once

#include <optional>
#include <vector>

#include "maxent/groebner/buchberger.hpp"
#include "maxent/model/problem.hpp"

namespace maxent::me {

using IntMatrix = std::vector<std::vector<long>>;
using IntVector = std::vector<long>;

/// Matrix A (d x m) and positive weights h for the monomial parametrization
/// x_j = h_j prod_i theta_i^{a_ij}. An empty h means all ones.
struct ToricSpec {
  IntMatrix a;
  std::vector<Rational> h;

  std::size_t m() const;
  std::vector<Rational> weights() const;
};

ToricSpec toric_spec_of(const MaxEntProblem& problem);

/// Generators of the ideal of relations among x_j = h_j theta^{a_j} in
/// x_1..x_m; with h = 1 this is the toric ideal of A. Computed by eliminating
/// theta (and an inversion variable w when A has negative entries) from a lex
/// Gröbner basis. Desk-scale guard: m <= 8, d <= 5, else SizeGuardError.
std::vector<gb::Polynomial> toric_ideal(const ToricSpec& spec,
                                        const gb::GroebnerOptions& options = {});

/// Basis of the integer kernel {u in Z^m : A u = 0}.
std::vector<IntVector> kernel_lattice(const IntMatrix& a);

struct MembershipResult {
  bool member = false;
  std::optional<IntVector> witness;
  /// Largest |sum_j u_j ln(p_j / h_j)| over the kernel basis.
  double max_violation = 0.0;
};

/// Log-domain test of the binomial relations of A (with the all-ones row
/// appended). Throws InvalidArgument on a zero probability.
MembershipResult toric_membership(const Distribution& p, const ToricSpec& spec, double tol);

}  // namespace maxent::me

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "maxent/model/problem.hpp"
#include "maxent/polyalg/polynomial.hpp"

namespace maxent::me {

enum class Provenance { direct, dual, sample_dual, min_i_div };

std::string_view to_string(Provenance p);

/// Polynomial equations in theta_1..theta_d whose positive common zeros encode
/// the estimate. Each equation has been multiplied by the monomial
/// theta^shift[i] (entries may be negative) so that every variable's minimum
/// exponent is zero; the positive-orthant zero set is unchanged.
struct PolySystem {
  std::vector<poly::Polynomial> equations;
  Provenance provenance = Provenance::direct;
  std::vector<poly::ExponentVector> shifts;

  /// th1..thd
  std::vector<std::string> variable_names() const;
};

/// Multiplies f by the monomial that brings every minimum exponent to zero.
/// Zero stays zero with a zero shift.
poly::LaurentCleared normalize_on_orthant(const poly::Polynomial& f);

/// sum_j (t_i(j) - T_i) prod_k theta_k^{t_k(j)} = 0 for each i.
PolySystem build_direct_system(const MaxEntProblem& problem);

/// Stationarity of Psi'(theta) = sum_j prod_i theta_i^{t_i(j) - T_i}. Needs
/// integer targets; throws ConventionError otherwise.
PolySystem build_dual_system(const MaxEntProblem& problem);

/// Stationarity of sum_j prod_i theta~_i^{sigma_i - N t_i(j)} for sampled data.
PolySystem build_sample_dual_system(const MaxEntProblem& problem);

/// sum_j r_j (t_i(j) - T_i) prod_k theta_k^{t_k(j)} = 0 with the prior r.
PolySystem build_minidiv_system(const MaxEntProblem& problem);

}  // namespace maxent::me

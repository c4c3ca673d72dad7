#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "maxent/groebner/sturm.hpp"
#include "maxent/model/problem.hpp"

namespace maxent::kc {

/// Iterate of the cyclic I-projection scheme.
///
/// `zeta[i]` accumulates every multiplier applied for constraint i, so
/// p = parametrize(zeta) with the problem's prior holds at every step.
/// `normalizers` records the step normalizer sum_j p_j zeta^{t_i(j)} of each
/// step taken so far.
struct KCState {
  std::size_t iteration = 0;
  me::Distribution p;
  std::vector<double> zeta;
  std::vector<double> normalizers;
  /// Set by a certified step: isolating interval of the step's root.
  std::optional<gb::IsolatingInterval> certificate;
};

struct KCOptions {
  double tol = 1e-10;
  std::size_t max_cycles = 500;
  /// Certify each step's root with a Sturm sequence on the exact weights.
  bool certify = false;
};

/// p^(0) = prior (uniform when absent), all multipliers 1.
KCState kc_init(const me::MaxEntProblem& problem);

/// Projects onto constraint i (0-based): finds the positive root zeta of
/// sum_j p_j (t_i(j) - T_i) zeta^{t_i(j)} and reweights p by zeta^{t_i}.
/// Throws InfeasibleError when T_i is not strictly inside the range of t_i
/// over the current support.
KCState kc_step(const KCState& state, const me::MaxEntProblem& problem, std::size_t i,
                bool certify = false);

/// Cycles i = 1..d until every residual is within tol. Throws
/// ConvergenceError with the last distribution after max_cycles.
me::Solution kc_run(const me::MaxEntProblem& problem, const KCOptions& options = {});

}  // namespace maxent::kc

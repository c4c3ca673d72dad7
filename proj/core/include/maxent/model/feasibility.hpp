#pragma once

#include <span>

#include "maxent/model/problem.hpp"

namespace maxent::me {

enum class HullPosition { interior, boundary, exterior };

/// Where T sits relative to the convex hull of the feature columns, decided
/// exactly with a small rational LP: maximize s subject to lambda_j >= s,
/// sum lambda = 1, sum_j lambda_j t(j) = T. Interior means s* > 0 (relative
/// interior when the columns are affinely dependent).
HullPosition classify_target(const FeatureMatrix& features, std::span<const Rational> targets);

/// Throws InfeasibleError (exterior) or BoundaryError (boundary) with a
/// message naming the offending constraint where possible.
void require_interior(const FeatureMatrix& features, std::span<const Rational> targets);

}  // namespace maxent::me

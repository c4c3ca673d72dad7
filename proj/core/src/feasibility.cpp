#include "maxent/model/feasibility.hpp"

#include <algorithm>
#include <optional>

#include "maxent/error.hpp"

namespace maxent::me {

namespace {

// Dense two-phase simplex over the rationals with Bland's rule. Sized for a
// handful of rows, which is all the hull test ever needs.
class Simplex {
 public:
  // Rows of [A | b] with b >= 0.
  Simplex(std::vector<std::vector<Rational>> rows, std::size_t num_cols)
      : n_(num_cols), rows_(std::move(rows)) {
    const std::size_t r = rows_.size();
    // Append one artificial per row, keep rhs last.
    for (std::size_t k = 0; k < r; ++k) {
      Rational rhs = rows_[k].back();
      rows_[k].pop_back();
      rows_[k].resize(n_ + r);
      rows_[k][n_ + k] = Rational(1);
      rows_[k].push_back(rhs);
      basis_.push_back(n_ + k);
    }
  }

  // Returns false when the constraints have no nonnegative solution.
  bool phase_one() {
    const std::size_t r = rows_.size();
    std::vector<Rational> cost(n_ + r);
    for (std::size_t k = 0; k < r; ++k) cost[n_ + k] = Rational(-1);
    optimize(cost, n_ + r);
    Rational value;
    for (std::size_t k = 0; k < r; ++k)
      if (basis_[k] >= n_) value += rows_[k].back();
    if (value.sign() != 0) return false;
    // Drive zero-valued artificials out of the basis; drop redundant rows.
    for (std::size_t k = 0; k < rows_.size();) {
      if (basis_[k] < n_) {
        ++k;
        continue;
      }
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_; ++j)
        if (!rows_[k][j].is_zero()) {
          col = j;
          break;
        }
      if (col) {
        pivot(k, *col);
        ++k;
      } else {
        rows_.erase(rows_.begin() + static_cast<long>(k));
        basis_.erase(basis_.begin() + static_cast<long>(k));
      }
    }
    return true;
  }

  // Maximizes cost . x over the original columns; returns the optimum.
  Rational phase_two(const std::vector<Rational>& cost) {
    std::vector<Rational> full(cost);
    full.resize(n_ + artificial_count());
    optimize(full, n_);
    Rational value;
    for (std::size_t k = 0; k < rows_.size(); ++k)
      if (basis_[k] < n_) value += cost[basis_[k]] * rows_[k].back();
    return value;
  }

 private:
  std::size_t artificial_count() const { return rows_.empty() ? 0 : rows_[0].size() - 1 - n_; }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = Rational(1) / rows_[r][c];
    for (auto& v : rows_[r]) v *= inv;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      if (k == r || rows_[k][c].is_zero()) continue;
      Rational f = rows_[k][c];
      for (std::size_t j = 0; j < rows_[k].size(); ++j) rows_[k][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  // Columns >= allowed never enter the basis.
  void optimize(const std::vector<Rational>& cost, std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed && !enter; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        Rational rc = cost[j];
        for (std::size_t k = 0; k < rows_.size(); ++k) rc -= cost[basis_[k]] * rows_[k][j];
        if (rc.sign() > 0) enter = j;
      }
      if (!enter) return;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (rows_[k][*enter].sign() <= 0) continue;
        Rational ratio = rows_[k].back() / rows_[k][*enter];
        if (!leave || ratio < best || (ratio == best && basis_[k] < basis_[*leave])) {
          leave = k;
          best = ratio;
        }
      }
      // Bounded by construction (every variable is at most 1).
      if (!leave) throw ArithmeticError("unbounded LP in hull test");
      pivot(*leave, *enter);
    }
  }

  std::size_t n_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> basis_;
};

void check_shapes(const FeatureMatrix& features, std::span<const Rational> targets) {
  if (features.size() != targets.size())
    throw InvalidArgument("targets has " + std::to_string(targets.size()) +
                          " entries, expected " + std::to_string(features.size()));
  if (features.empty()) return;
  for (const auto& row : features)
    if (row.size() != features[0].size()) throw InvalidArgument("ragged feature matrix");
}

}  // namespace

HullPosition classify_target(const FeatureMatrix& features, std::span<const Rational> targets) {
  check_shapes(features, targets);
  if (features.empty()) return HullPosition::interior;
  const std::size_t d = features.size();
  const std::size_t m = features[0].size();

  // Variables mu_1..mu_m, s with lambda_j = mu_j + s.
  std::vector<std::vector<Rational>> rows;
  {
    std::vector<Rational> row(m + 2, Rational(1));
    row[m] = Rational(static_cast<long>(m));
    row[m + 1] = Rational(1);
    rows.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> row(m + 2);
    long total = 0;
    for (std::size_t j = 0; j < m; ++j) {
      row[j] = Rational(features[i][j]);
      total += features[i][j];
    }
    row[m] = Rational(total);
    row[m + 1] = targets[i];
    if (row[m + 1].sign() < 0)
      for (auto& v : row) v = -v;
    rows.push_back(std::move(row));
  }

  Simplex lp(std::move(rows), m + 1);
  if (!lp.phase_one()) return HullPosition::exterior;
  std::vector<Rational> cost(m + 1);
  cost[m] = Rational(1);
  Rational s = lp.phase_two(cost);
  return s.sign() > 0 ? HullPosition::interior : HullPosition::boundary;
}

void require_interior(const FeatureMatrix& features, std::span<const Rational> targets) {
  check_shapes(features, targets);
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto [lo, hi] = std::minmax_element(features[i].begin(), features[i].end());
    const Rational& t = targets[i];
    const std::string where = "constraint " + std::to_string(i + 1) + ": target " +
                              t.to_string() + " vs feature range [" + std::to_string(*lo) +
                              ", " + std::to_string(*hi) + "]";
    if (t < Rational(*lo) || t > Rational(*hi))
      throw InfeasibleError(where + ": outside the range, no distribution matches");
    if (*lo != *hi && (t == Rational(*lo) || t == Rational(*hi)))
      throw BoundaryError(where + ": on the boundary, the maximizer has zero entries");
  }
  switch (classify_target(features, targets)) {
    case HullPosition::exterior:
      throw InfeasibleError("targets lie outside the convex hull of the feature columns");
    case HullPosition::boundary:
      throw BoundaryError(
          "targets lie on the boundary of the convex hull; the maximizer has zero entries");
    case HullPosition::interior:
      break;
  }
}

}  // namespace maxent::me

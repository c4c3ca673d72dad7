#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "maxent/groebner/sturm.hpp"
#include "maxent/numkernel/rational.hpp"

namespace maxent::me {

using num::Rational;

/// d rows of m integer feature values t_i(j).
using FeatureMatrix = std::vector<std::vector<long>>;

/// Estimation problem over the sample space {1, ..., m}.
///
/// Holds the integer feature matrix and at most one source of moment
/// information: exact targets T_i, or observations from which the sample
/// means are formed. The optional prior is a strictly positive point of the
/// simplex. Construction validates all of this.
class MaxEntProblem {
 public:
  MaxEntProblem(std::size_t m, FeatureMatrix features,
                std::optional<std::vector<Rational>> targets = std::nullopt,
                std::optional<std::vector<int>> samples = std::nullopt,
                std::optional<std::vector<Rational>> prior = std::nullopt,
                std::vector<std::string> names = {});

  static MaxEntProblem with_targets(std::size_t m, FeatureMatrix features,
                                    std::vector<Rational> targets,
                                    std::optional<std::vector<Rational>> prior = std::nullopt);
  static MaxEntProblem with_samples(std::size_t m, FeatureMatrix features,
                                    std::vector<int> samples,
                                    std::optional<std::vector<Rational>> prior = std::nullopt);

  std::size_t m() const { return m_; }
  std::size_t d() const { return features_.size(); }
  const FeatureMatrix& features() const { return features_; }
  long feature(std::size_t i, std::size_t j) const { return features_[i][j]; }

  const std::optional<std::vector<Rational>>& targets() const { return targets_; }
  const std::optional<std::vector<int>>& samples() const { return samples_; }
  const std::optional<std::vector<Rational>>& prior() const { return prior_; }
  /// Optional outcome labels, one per j.
  const std::vector<std::string>& names() const { return names_; }

  bool has_moments() const { return targets_.has_value() || samples_.has_value(); }

  /// Targets, or the sample means sigma / N. Throws InvalidArgument when the
  /// problem carries neither.
  std::vector<Rational> effective_targets() const;

  /// The prior, or the uniform distribution.
  std::vector<Rational> prior_or_uniform() const;

  /// Same features and prior, with explicit targets.
  MaxEntProblem with_new_targets(std::vector<Rational> targets) const;

  friend bool operator==(const MaxEntProblem&, const MaxEntProblem&) = default;

 private:
  std::size_t m_;
  FeatureMatrix features_;
  std::optional<std::vector<Rational>> targets_;
  std::optional<std::vector<int>> samples_;
  std::optional<std::vector<Rational>> prior_;
  std::vector<std::string> names_;
};

/// Point of the probability simplex, with exact values when known.
struct Distribution {
  std::vector<double> probs;
  std::optional<std::vector<Rational>> exact;

  std::size_t size() const { return probs.size(); }
};

/// Throws InvalidArgument unless entries are >= 0 and sum to 1 within 1e-12.
void validate_distribution(const Distribution& p);

enum class Method { direct, dual, sample_dual, min_i_div, kc, newton, gis };

std::string_view to_string(Method method);
/// Accepts the CLI spellings: direct, dual, sample-dual, min-i-div, kc, newton, gis.
Method parse_method(std::string_view text);

struct SolutionDiagnostics {
  /// Positive roots found by the algebraic route; all of them are kept here.
  std::size_t root_count = 0;
  std::vector<std::vector<double>> roots;
  std::size_t basis_size = 0;
  std::size_t groebner_pairs = 0;
  long groebner_max_degree = 0;
  int eliminant_degree = 0;
  std::size_t cycles = 0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  /// The sample-dual recovery had to use theta~ -> 1/theta~.
  bool sign_flip = false;
  std::vector<std::string> notes;
};

struct Solution {
  Method method = Method::direct;
  Distribution distribution;
  /// p_j proportional to r_j prod_i theta_i^{t_i(j)}; xi = -ln theta.
  std::vector<double> theta;
  std::vector<double> xi;
  double normalizer = 1.0;
  std::vector<double> residuals;
  double entropy = 0.0;
  std::optional<double> kl_to_prior;
  SolutionDiagnostics diagnostics;
  std::vector<gb::IsolatingInterval> certificates;

  double max_abs_residual() const;
};

}  // namespace maxent::me

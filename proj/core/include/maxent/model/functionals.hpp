#pragma once

#include <span>
#include <vector>

#include "maxent/model/problem.hpp"

namespace maxent::me {

/// p_j = r_j prod_i theta_i^{t_i(j)} / Z with r the prior (uniform if absent).
/// Computed in the log domain. Throws InvalidArgument for nonpositive theta.
Distribution parametrize(std::span<const double> theta, const MaxEntProblem& problem);

/// Same map with explicit weights r (need not be normalized).
Distribution parametrize(std::span<const double> theta, const FeatureMatrix& features,
                         std::span<const double> weights, double* normalizer = nullptr);

/// Exact version for rational theta.
std::vector<Rational> parametrize_exact(std::span<const Rational> theta,
                                        const FeatureMatrix& features,
                                        std::span<const Rational> weights);

/// Shannon entropy with 0 ln 0 = 0.
double entropy(const Distribution& p);

/// I(p || r) = sum p_j ln(p_j / r_j). Throws InvalidArgument if r_j = 0 < p_j.
double kl_divergence(const Distribution& p, const Distribution& r);

/// E_p[t_i] for every feature row.
std::vector<double> moments(std::span<const double> p, const FeatureMatrix& features);

/// sum_j t_i(j) p_j - T_i, with T from targets or sample means.
std::vector<double> residuals(const Distribution& p, const MaxEntProblem& problem);

struct SampleSums {
  std::vector<long> sigma;
  std::vector<Rational> t_bar;
  long n = 0;
};

/// sigma_i = sum_l t_i(O_l) and T~_i = sigma_i / N for observations in 1..m.
SampleSums sample_sums(std::span<const int> samples, const FeatureMatrix& features, std::size_t m);

Distribution to_distribution(std::span<const Rational> exact);

/// Fills residuals, entropy, kl_to_prior (when the problem has a prior) and
/// xi = -ln theta from the distribution and theta already in `solution`.
void fill_summary(Solution& solution, const MaxEntProblem& problem);

}  // namespace maxent::me

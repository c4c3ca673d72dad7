#include "maxent/model/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "maxent/error.hpp"

namespace maxent::me {

Distribution parametrize(std::span<const double> theta, const FeatureMatrix& features,
                         std::span<const double> weights, double* normalizer) {
  if (theta.size() != features.size())
    throw InvalidArgument("theta has " + std::to_string(theta.size()) + " entries, expected " +
                          std::to_string(features.size()));
  const std::size_t m = weights.size();
  std::vector<long double> log_theta(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    if (!(theta[i] > 0.0) || !std::isfinite(theta[i]))
      throw InvalidArgument("theta must be strictly positive and finite");
    log_theta[i] = std::log(static_cast<long double>(theta[i]));
  }
  std::vector<long double> logw(m);
  long double top = -INFINITY;
  for (std::size_t j = 0; j < m; ++j) {
    if (!(weights[j] > 0.0)) throw InvalidArgument("weights must be strictly positive");
    long double s = std::log(static_cast<long double>(weights[j]));
    for (std::size_t i = 0; i < features.size(); ++i) s += features[i][j] * log_theta[i];
    logw[j] = s;
    top = std::max(top, s);
  }
  long double total = 0.0L;
  std::vector<long double> w(m);
  for (std::size_t j = 0; j < m; ++j) {
    w[j] = std::exp(logw[j] - top);
    total += w[j];
  }
  Distribution out;
  out.probs.resize(m);
  for (std::size_t j = 0; j < m; ++j) out.probs[j] = static_cast<double>(w[j] / total);
  if (normalizer) *normalizer = static_cast<double>(std::exp(top) * total);
  return out;
}

Distribution parametrize(std::span<const double> theta, const MaxEntProblem& problem) {
  std::vector<double> weights(problem.m());
  auto prior = problem.prior_or_uniform();
  for (std::size_t j = 0; j < weights.size(); ++j) weights[j] = prior[j].to_double();
  return parametrize(theta, problem.features(), weights);
}

std::vector<Rational> parametrize_exact(std::span<const Rational> theta,
                                        const FeatureMatrix& features,
                                        std::span<const Rational> weights) {
  if (theta.size() != features.size()) throw InvalidArgument("theta length mismatch");
  for (const auto& t : theta)
    if (t.sign() <= 0) throw InvalidArgument("theta must be strictly positive");
  std::vector<Rational> w(weights.size());
  Rational total;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    Rational v = weights[j];
    for (std::size_t i = 0; i < theta.size(); ++i) v *= num::pow(theta[i], features[i][j]);
    w[j] = v;
    total += v;
  }
  for (auto& v : w) v /= total;
  return w;
}

double entropy(const Distribution& p) {
  long double h = 0.0L;
  for (double x : p.probs)
    if (x > 0.0) h -= x * std::log(static_cast<long double>(x));
  return static_cast<double>(h);
}

double kl_divergence(const Distribution& p, const Distribution& r) {
  if (p.size() != r.size()) throw InvalidArgument("distributions differ in length");
  long double d = 0.0L;
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p.probs[j] <= 0.0) continue;
    if (r.probs[j] <= 0.0)
      throw InvalidArgument("p is not absolutely continuous w.r.t. r at outcome " +
                            std::to_string(j + 1));
    d += p.probs[j] * std::log(static_cast<long double>(p.probs[j]) / r.probs[j]);
  }
  return static_cast<double>(d);
}

std::vector<double> moments(std::span<const double> p, const FeatureMatrix& features) {
  std::vector<double> out(features.size());
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].size() != p.size()) throw InvalidArgument("feature row length mismatch");
    long double s = 0.0L;
    for (std::size_t j = 0; j < p.size(); ++j) s += static_cast<long double>(features[i][j]) * p[j];
    out[i] = static_cast<double>(s);
  }
  return out;
}

std::vector<double> residuals(const Distribution& p, const MaxEntProblem& problem) {
  if (p.size() != problem.m())
    throw InvalidArgument("distribution has " + std::to_string(p.size()) + " entries, expected " +
                          std::to_string(problem.m()));
  const auto targets = problem.effective_targets();
  auto mu = moments(p.probs, problem.features());
  for (std::size_t i = 0; i < mu.size(); ++i) mu[i] -= targets[i].to_double();
  return mu;
}

SampleSums sample_sums(std::span<const int> samples, const FeatureMatrix& features,
                       std::size_t m) {
  if (samples.empty()) throw InvalidArgument("samples must be non-empty");
  SampleSums out;
  out.n = static_cast<long>(samples.size());
  out.sigma.assign(features.size(), 0);
  for (std::size_t l = 0; l < samples.size(); ++l) {
    int o = samples[l];
    if (o < 1 || static_cast<std::size_t>(o) > m)
      throw InvalidArgument("sample " + std::to_string(l + 1) + " is " + std::to_string(o) +
                            ", outside 1.." + std::to_string(m));
    for (std::size_t i = 0; i < features.size(); ++i)
      out.sigma[i] += features[i][static_cast<std::size_t>(o - 1)];
  }
  for (long s : out.sigma) out.t_bar.emplace_back(s, out.n);
  return out;
}

Distribution to_distribution(std::span<const Rational> exact) {
  Distribution out;
  out.exact = std::vector<Rational>(exact.begin(), exact.end());
  for (const auto& r : exact) out.probs.push_back(r.to_double());
  return out;
}

void fill_summary(Solution& solution, const MaxEntProblem& problem) {
  solution.residuals = residuals(solution.distribution, problem);
  solution.entropy = entropy(solution.distribution);
  if (problem.prior()) {
    solution.kl_to_prior = kl_divergence(solution.distribution, to_distribution(*problem.prior()));
  } else {
    solution.kl_to_prior.reset();
  }
  solution.xi.clear();
  for (double t : solution.theta) solution.xi.push_back(-std::log(t));
}

}  // namespace maxent::me

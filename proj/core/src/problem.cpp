#include "maxent/model/problem.hpp"

#include <algorithm>
#include <cmath>

#include "maxent/error.hpp"

namespace maxent::me {

MaxEntProblem::MaxEntProblem(std::size_t m, FeatureMatrix features,
                             std::optional<std::vector<Rational>> targets,
                             std::optional<std::vector<int>> samples,
                             std::optional<std::vector<Rational>> prior,
                             std::vector<std::string> names)
    : m_(m),
      features_(std::move(features)),
      targets_(std::move(targets)),
      samples_(std::move(samples)),
      prior_(std::move(prior)),
      names_(std::move(names)) {
  if (m_ < 2) throw InvalidArgument("sample space needs m >= 2 outcomes, got " + std::to_string(m_));
  for (std::size_t i = 0; i < features_.size(); ++i) {
    if (features_[i].size() != m_)
      throw InvalidArgument("feature row " + std::to_string(i + 1) + " has " +
                            std::to_string(features_[i].size()) + " entries, expected " +
                            std::to_string(m_));
  }
  if (targets_ && samples_)
    throw InvalidArgument("give either targets or samples, not both");
  if (targets_ && targets_->size() != features_.size())
    throw InvalidArgument("targets has " + std::to_string(targets_->size()) +
                          " entries, expected one per feature (" +
                          std::to_string(features_.size()) + ")");
  if (samples_) {
    if (samples_->empty()) throw InvalidArgument("samples must be non-empty");
    for (std::size_t l = 0; l < samples_->size(); ++l) {
      int o = (*samples_)[l];
      if (o < 1 || static_cast<std::size_t>(o) > m_)
        throw InvalidArgument("sample " + std::to_string(l + 1) + " is " + std::to_string(o) +
                              ", outside 1.." + std::to_string(m_));
    }
  }
  if (prior_) {
    if (prior_->size() != m_)
      throw InvalidArgument("prior has " + std::to_string(prior_->size()) +
                            " entries, expected " + std::to_string(m_));
    Rational total;
    for (const auto& r : *prior_) {
      if (r.sign() <= 0) throw InvalidArgument("prior entries must be strictly positive");
      total += r;
    }
    if (total != Rational(1)) throw InvalidArgument("prior must sum to 1, got " + total.to_string());
  }
  if (!names_.empty() && names_.size() != m_)
    throw InvalidArgument("names has " + std::to_string(names_.size()) +
                          " entries, expected one label per outcome (" + std::to_string(m_) + ")");
}

MaxEntProblem MaxEntProblem::with_targets(std::size_t m, FeatureMatrix features,
                                          std::vector<Rational> targets,
                                          std::optional<std::vector<Rational>> prior) {
  return MaxEntProblem(m, std::move(features), std::move(targets), std::nullopt,
                       std::move(prior));
}

MaxEntProblem MaxEntProblem::with_samples(std::size_t m, FeatureMatrix features,
                                          std::vector<int> samples,
                                          std::optional<std::vector<Rational>> prior) {
  return MaxEntProblem(m, std::move(features), std::nullopt, std::move(samples),
                       std::move(prior));
}

std::vector<Rational> MaxEntProblem::effective_targets() const {
  if (targets_) return *targets_;
  if (!samples_) throw InvalidArgument("problem has neither targets nor samples");
  std::vector<Rational> out(d());
  const long n = static_cast<long>(samples_->size());
  for (std::size_t i = 0; i < d(); ++i) {
    long sigma = 0;
    for (int o : *samples_) sigma += features_[i][static_cast<std::size_t>(o - 1)];
    out[i] = Rational(sigma, n);
  }
  return out;
}

std::vector<Rational> MaxEntProblem::prior_or_uniform() const {
  if (prior_) return *prior_;
  return std::vector<Rational>(m_, Rational(1L, static_cast<long>(m_)));
}

MaxEntProblem MaxEntProblem::with_new_targets(std::vector<Rational> targets) const {
  return MaxEntProblem(m_, features_, std::move(targets), std::nullopt, prior_, names_);
}

void validate_distribution(const Distribution& p) {
  if (p.probs.empty()) throw InvalidArgument("distribution is empty");
  double total = 0.0;
  for (double x : p.probs) {
    if (!std::isfinite(x) || x < 0.0)
      throw InvalidArgument("distribution entries must be finite and nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvalidArgument("distribution sums to " + std::to_string(total) + ", not 1");
  if (p.exact) {
    if (p.exact->size() != p.probs.size())
      throw InvalidArgument("exact and floating distributions differ in length");
    Rational sum;
    for (const auto& r : *p.exact) {
      if (r.sign() < 0) throw InvalidArgument("exact distribution has a negative entry");
      sum += r;
    }
    if (sum != Rational(1)) throw InvalidArgument("exact distribution does not sum to 1");
  }
}

namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::direct, "direct"},   {Method::dual, "dual"}, {Method::sample_dual, "sample-dual"},
    {Method::min_i_div, "min-i-div"}, {Method::kc, "kc"},   {Method::newton, "newton"},
    {Method::gis, "gis"},
};

}  // namespace

std::string_view to_string(Method method) {
  for (const auto& [m, name] : kMethodNames)
    if (m == method) return name;
  return "unknown";
}

Method parse_method(std::string_view text) {
  for (const auto& [m, name] : kMethodNames)
    if (name == text) return m;
  throw ParseError("unknown method '" + std::string(text) +
                   "' (expected direct, dual, sample-dual, min-i-div, kc, newton or gis)");
}

double Solution::max_abs_residual() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, std::abs(r));
  return worst;
}

}  // namespace maxent::me

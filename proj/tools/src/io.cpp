#include "maxent/cli/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "maxent/error.hpp"

namespace maxent::cli {

using num::Rational;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

const json& field(const json& doc, const char* key) {
  if (!doc.contains(key)) fail(key, "missing required field");
  return doc.at(key);
}

const json& array_at(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array");
  return v;
}

long integer_at(const json& v, const std::string& path) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) return static_cast<long>(x);
    throw IntegralityError(path + ": feature values must be integers (got " + v.dump() +
                           "); the toric parametrization needs integer-valued constraint functions");
  }
  fail(path, "expected an integer");
}

Rational rational_at(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string())
    fail(path, "expected a rational string such as \"9/2\" (floats would lose exactness)");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

std::vector<Rational> rationals_at(const json& v, const std::string& path) {
  std::vector<Rational> out;
  std::size_t k = 0;
  for (const auto& x : array_at(v, path)) out.push_back(rational_at(x, path + "[" + std::to_string(k++) + "]"));
  return out;
}

json rational_strings(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

std::string point_name(std::size_t n) { return "th" + std::to_string(n); }

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": invalid JSON (" + e.what() + ")");
  }
}

me::MaxEntProblem parse_problem(const json& doc) {
  if (!doc.is_object()) fail("$", "expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "m" && key != "features" && key != "targets" && key != "samples" && key != "prior" &&
        key != "names")
      fail(key, "unknown field");
  }
  const json& mj = field(doc, "m");
  if (!mj.is_number_integer() || mj.get<long>() < 2) fail("m", "expected an integer >= 2");
  const auto m = static_cast<std::size_t>(mj.get<long>());

  me::FeatureMatrix features;
  const json& fj = array_at(field(doc, "features"), "features");
  for (std::size_t i = 0; i < fj.size(); ++i) {
    const std::string row_path = "features[" + std::to_string(i) + "]";
    const json& row = array_at(fj[i], row_path);
    if (row.size() != m) fail(row_path, "expected " + std::to_string(m) + " entries");
    std::vector<long> r;
    for (std::size_t j = 0; j < row.size(); ++j)
      r.push_back(integer_at(row[j], row_path + "[" + std::to_string(j) + "]"));
    features.push_back(std::move(r));
  }

  const bool has_targets = doc.contains("targets"), has_samples = doc.contains("samples");
  if (has_targets == has_samples) fail("$", "exactly one of \"targets\" or \"samples\" is required");
  std::optional<std::vector<Rational>> targets;
  std::optional<std::vector<int>> samples;
  if (has_targets) {
    targets = rationals_at(doc.at("targets"), "targets");
    if (targets->size() != features.size())
      fail("targets", "expected one target per feature row (" + std::to_string(features.size()) + ")");
  } else {
    const json& sj = array_at(doc.at("samples"), "samples");
    if (sj.empty()) fail("samples", "expected at least one observation");
    samples.emplace();
    for (std::size_t l = 0; l < sj.size(); ++l) {
      const std::string p = "samples[" + std::to_string(l) + "]";
      if (!sj[l].is_number_integer()) fail(p, "expected an outcome index in 1.." + std::to_string(m));
      const long o = sj[l].get<long>();
      if (o < 1 || o > static_cast<long>(m)) fail(p, "outcome " + std::to_string(o) + " is outside 1.." + std::to_string(m));
      samples->push_back(static_cast<int>(o));
    }
  }
  std::optional<std::vector<Rational>> prior;
  if (doc.contains("prior")) {
    prior = rationals_at(doc.at("prior"), "prior");
    if (prior->size() != m) fail("prior", "expected " + std::to_string(m) + " entries");
    Rational total;
    for (std::size_t j = 0; j < m; ++j) {
      if ((*prior)[j].sign() <= 0) fail("prior[" + std::to_string(j) + "]", "must be positive");
      total += (*prior)[j];
    }
    if (total != Rational(1)) fail("prior", "entries sum to " + total.to_string() + ", not exactly 1");
  }
  std::vector<std::string> names;
  if (doc.contains("names")) {
    const json& nj = array_at(doc.at("names"), "names");
    if (nj.size() != m) fail("names", "expected " + std::to_string(m) + " labels");
    for (std::size_t j = 0; j < nj.size(); ++j) {
      if (!nj[j].is_string()) fail("names[" + std::to_string(j) + "]", "expected a string");
      names.push_back(nj[j].get<std::string>());
    }
  }
  return me::MaxEntProblem(m, std::move(features), std::move(targets), std::move(samples),
                           std::move(prior), std::move(names));
}

me::MaxEntProblem parse_problem(const std::filesystem::path& path) {
  return parse_problem(read_json(path));
}

json serialize_problem(const me::MaxEntProblem& problem) {
  json doc;
  doc["m"] = problem.m();
  doc["features"] = problem.features();
  if (problem.targets()) doc["targets"] = rational_strings(*problem.targets());
  if (problem.samples()) doc["samples"] = *problem.samples();
  if (problem.prior()) doc["prior"] = rational_strings(*problem.prior());
  if (!problem.names().empty()) doc["names"] = problem.names();
  return doc;
}

json solution_to_json(const me::Solution& s) {
  json doc;
  doc["method"] = std::string(me::to_string(s.method));
  doc["distribution"] = s.distribution.probs;
  if (s.distribution.exact) doc["distribution_exact"] = rational_strings(*s.distribution.exact);
  doc["theta"] = s.theta;
  doc["xi"] = s.xi;
  doc["normalizer"] = s.normalizer;
  doc["entropy"] = s.entropy;
  if (s.kl_to_prior) doc["kl_to_prior"] = *s.kl_to_prior;
  doc["residuals"] = s.residuals;

  const auto& d = s.diagnostics;
  json diag;
  diag["root_count"] = d.root_count;
  diag["roots"] = d.roots;
  diag["basis_size"] = d.basis_size;
  diag["groebner_pairs"] = d.groebner_pairs;
  diag["groebner_max_degree"] = d.groebner_max_degree;
  diag["eliminant_degree"] = d.eliminant_degree;
  diag["cycles"] = d.cycles;
  diag["iterations"] = d.iterations;
  diag["gradient_norm"] = d.gradient_norm;
  diag["sign_flip"] = d.sign_flip;
  diag["notes"] = d.notes;
  doc["diagnostics"] = std::move(diag);

  if (!s.certificates.empty()) {
    json certs = json::array();
    for (const auto& c : s.certificates) {
      std::vector<std::string> names;
      for (std::size_t k = 1; k <= c.polynomial.num_vars(); ++k) names.push_back(point_name(k));
      certs.push_back({{"low", c.interval.low().to_string()},
                       {"high", c.interval.high().to_string()},
                       {"polynomial", c.polynomial.to_string(names)}});
    }
    doc["certificates"] = std::move(certs);
  }
  return doc;
}

me::Distribution parse_distribution(const json& doc) {
  const json* arr = &doc;
  std::string path = "$";
  if (doc.is_object()) {
    if (!doc.contains("distribution")) fail("distribution", "missing required field");
    arr = &doc.at("distribution");
    path = "distribution";
  }
  me::Distribution p;
  std::size_t k = 0;
  for (const auto& x : array_at(*arr, path)) {
    if (!x.is_number()) fail(path + "[" + std::to_string(k) + "]", "expected a number");
    p.probs.push_back(x.get<double>());
    ++k;
  }
  me::validate_distribution(p);
  return p;
}

me::Distribution parse_distribution(const std::filesystem::path& path) {
  return parse_distribution(read_json(path));
}

std::string format_report(const me::Solution& s, const me::MaxEntProblem& problem) {
  std::ostringstream out;
  out << std::setprecision(6);
  out << "method: " << me::to_string(s.method) << '\n';
  out << "distribution:\n";
  for (std::size_t j = 0; j < s.distribution.size(); ++j) {
    const std::string label =
        problem.names().empty() ? std::to_string(j + 1) : problem.names()[j];
    out << "  " << label << "  " << s.distribution.probs[j];
    if (s.distribution.exact) out << "  (" << (*s.distribution.exact)[j].to_string() << ')';
    out << '\n';
  }
  out << "theta:";
  for (double t : s.theta) out << ' ' << t;
  out << "\nentropy: " << s.entropy << '\n';
  if (s.kl_to_prior) out << "kl_to_prior: " << *s.kl_to_prior << '\n';
  out << "max |residual|: " << s.max_abs_residual() << '\n';
  for (const auto& note : s.diagnostics.notes) out << "note: " << note << '\n';
  return out.str();
}

}  // namespace maxent::cli

#include "maxent/cli/app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "maxent/baseline/baseline.hpp"
#include "maxent/cli/io.hpp"
#include "maxent/error.hpp"
#include "maxent/model/estimate.hpp"
#include "maxent/model/functionals.hpp"
#include "maxent/model/toric.hpp"

namespace maxent::cli {

namespace {

enum class LogLevel { quiet, info, debug };

LogLevel log_level() {
  const char* env = std::getenv("MAXENT_LOG");
  if (!env || !*env) return LogLevel::quiet;
  const std::string v = env;
  if (v == "quiet") return LogLevel::quiet;
  if (v == "info") return LogLevel::info;
  if (v == "debug") return LogLevel::debug;
  throw ParseError("MAXENT_LOG must be one of quiet, info, debug (got \"" + v + "\")");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::infeasible:
    case ErrorKind::boundary:
      return kInfeasible;
    case ErrorKind::size_guard:
      return kSizeGuard;
    case ErrorKind::parse:
    case ErrorKind::integrality:
    case ErrorKind::invalid_argument:
    case ErrorKind::convention:
      return kInvalidInput;
    case ErrorKind::convergence:
      return kNoConvergence;
    default:
      return kOtherError;
  }
}

void emit(const json& doc, const std::string& output, std::ostream& out) {
  if (output.empty()) {
    out << doc.dump(2) << '\n';
    return;
  }
  std::ofstream file(output);
  if (!file) throw InvalidArgument("cannot write " + output);
  file << doc.dump(2) << '\n';
}

// The problem the Newton oracle should agree with: entropy methods ignore
// the prior, the others measure divergence from it.
me::MaxEntProblem oracle_problem(const me::MaxEntProblem& p, me::Method method) {
  const auto targets = p.effective_targets();
  const bool uses_prior = method == me::Method::min_i_div || method == me::Method::kc ||
                          method == me::Method::newton || method == me::Method::gis;
  return me::MaxEntProblem(p.m(), p.features(), targets, std::nullopt,
                           uses_prior ? p.prior() : std::nullopt, p.names());
}

struct Context {
  LogLevel level = LogLevel::quiet;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  void info(const std::string& line) const {
    if (level != LogLevel::quiet) *err << "[maxent] " << line << '\n';
  }
};

int run_estimate(const Context& ctx, const std::string& input, const std::string& method_name,
                 double tol, const std::string& output, bool verify) {
  const auto problem = parse_problem(std::filesystem::path(input));
  const auto method = me::parse_method(method_name);
  me::EstimateOptions options;
  options.tol = tol;
  if (ctx.level == LogLevel::debug)
    options.groebner.log = [&ctx](std::string_view line) { *ctx.err << "[maxent] " << line << '\n'; };
  ctx.info("estimate: m = " + std::to_string(problem.m()) + ", d = " + std::to_string(problem.d()) +
           ", method " + method_name);

  const auto sol = me::estimate(problem, method, options);
  json doc = solution_to_json(sol);
  ctx.info("estimate: largest residual " + std::to_string(sol.max_abs_residual()));

  if (verify) {
    const auto oracle = baseline::newton_dual(oracle_problem(problem, method));
    double gap = 0.0;
    for (std::size_t j = 0; j < problem.m(); ++j)
      gap = std::max(gap, std::abs(oracle.solution.distribution.probs[j] - sol.distribution.probs[j]));
    doc["verify"] = {{"oracle", "newton"},
                     {"gap", gap},
                     {"oracle_distribution", oracle.solution.distribution.probs}};
    *ctx.err << "verify: l-inf gap to the newton oracle = " << gap << '\n';
  }
  emit(doc, output, *ctx.out);
  if (!output.empty()) *ctx.out << format_report(sol, problem);
  return kSuccess;
}

int run_toric_ideal(const Context& ctx, const std::string& input, const std::string& output) {
  const auto problem = parse_problem(std::filesystem::path(input));
  me::ToricSpec spec{me::IntMatrix(problem.features().begin(), problem.features().end()), {}};
  gb::GroebnerOptions options;
  if (ctx.level == LogLevel::debug)
    options.log = [&ctx](std::string_view line) { *ctx.err << "[maxent] " << line << '\n'; };
  const auto gens = me::toric_ideal(spec, options);
  std::vector<std::string> names;
  for (std::size_t j = 1; j <= problem.m(); ++j) names.push_back("x" + std::to_string(j));
  json doc;
  doc["variables"] = names;
  doc["generators"] = json::array();
  for (const auto& g : gens) doc["generators"].push_back(g.to_string(names));
  ctx.info("toric-ideal: " + std::to_string(gens.size()) + " generators");
  emit(doc, output, *ctx.out);
  return kSuccess;
}

int run_check(const Context& ctx, const std::string& input, const std::string& dist_path, double tol) {
  const auto problem = parse_problem(std::filesystem::path(input));
  const auto p = parse_distribution(std::filesystem::path(dist_path));
  if (p.size() != problem.m())
    throw InvalidArgument("distribution has " + std::to_string(p.size()) + " entries, expected " +
                          std::to_string(problem.m()));
  const auto res = me::residuals(p, problem);
  double worst = 0.0;
  for (double r : res) worst = std::max(worst, std::abs(r));
  const auto member = me::toric_membership(p, me::toric_spec_of(problem), tol);
  json doc;
  doc["residuals"] = res;
  doc["max_abs_residual"] = worst;
  doc["residuals_ok"] = worst <= tol;
  doc["toric_member"] = member.member;
  doc["max_violation"] = member.max_violation;
  if (member.witness) doc["witness"] = *member.witness;
  doc["verdict"] = (worst <= tol && member.member) ? "pass" : "fail";
  ctx.info("check: " + doc["verdict"].get<std::string>());
  emit(doc, "", *ctx.out);
  return kSuccess;
}

int run_sample_sums(const Context& ctx, const std::string& input) {
  const auto problem = parse_problem(std::filesystem::path(input));
  if (!problem.samples()) throw InvalidArgument("sample-sums needs a problem with \"samples\"");
  const auto sums = me::sample_sums(*problem.samples(), problem.features(), problem.m());
  json doc;
  doc["sigma"] = sums.sigma;
  doc["t_bar"] = json::array();
  for (const auto& t : sums.t_bar) doc["t_bar"].push_back(t.to_string());
  doc["N"] = sums.n;
  emit(doc, "", *ctx.out);
  return kSuccess;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximum entropy and minimum divergence estimation by algebraic methods", "maxent"};
  app.require_subcommand(1);

  std::string input, output, method = "direct", dist_path;
  double tol = 1e-10;
  bool verify = false;

  auto* est = app.add_subcommand("estimate", "Estimate the distribution and write a solution file");
  est->add_option("--input", input, "Problem file")->required();
  est->add_option("--method", method, "direct|dual|sample-dual|min-i-div|kc|newton|gis")
      ->capture_default_str();
  est->add_option("--tol", tol, "Residual tolerance")->capture_default_str();
  est->add_option("--output", output, "Solution file (default: stdout)");
  est->add_flag("--verify", verify, "Also run the Newton oracle and report the l-inf gap");

  auto* tor = app.add_subcommand("toric-ideal", "Generators of the toric ideal of the features");
  tor->add_option("--input", input, "Problem file")->required();
  tor->add_option("--output", output, "Output file (default: stdout)");

  auto* chk = app.add_subcommand("check", "Residuals and toric membership of a distribution");
  chk->add_option("--input", input, "Problem file")->required();
  chk->add_option("--distribution", dist_path, "Solution file or JSON array")->required();
  chk->add_option("--tol", tol, "Tolerance")->capture_default_str();

  auto* sums = app.add_subcommand("sample-sums", "Sample sums, sample means and sample size");
  sums->add_option("--input", input, "Problem file")->required();

  std::vector<std::string> argv_store{"maxent"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }

  try {
    Context ctx{log_level(), &out, &err};
    if (*est) {
      if (!(tol > 0.0)) throw InvalidArgument("--tol must be positive");
      return run_estimate(ctx, input, method, tol, output, verify);
    }
    if (*tor) return run_toric_ideal(ctx, input, output);
    if (*chk) {
      if (!(tol > 0.0)) throw InvalidArgument("--tol must be positive");
      return run_check(ctx, input, dist_path, tol);
    }
    return run_sample_sums(ctx, input);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kOtherError;
  }
}

}  // namespace maxent::cli

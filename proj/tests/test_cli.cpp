#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "maxent/cli/app.hpp"
#include "maxent/cli/io.hpp"
#include "maxent/error.hpp"
#include "support/instances.hpp"

using namespace maxent;
using namespace maxent::cli;
using maxent::num::Rational;

namespace {

const std::string kFixtures = MAXENT_FIXTURES;

std::string fixture(const char* name) { return kFixtures + "/" + name; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("parse_problem examples") {
  auto p = parse_problem(json::parse(R"({"m":2, "features":[[0,1]], "targets":["1/2"]})"));
  CHECK(p.m() == 2);
  CHECK(p.d() == 1);
  CHECK(p.targets()->at(0) == Rational(1, 2));

  p = parse_problem(std::filesystem::path(fixture("die.json")));
  CHECK(p.features()[0] == std::vector<long>{1, 2, 3, 4, 5, 6});
  CHECK(p.targets()->at(0) == Rational(9, 2));

  CHECK_THROWS_AS(parse_problem(json::parse(R"({"m":2, "features":[[0.5,1]], "targets":["1/2"]})")),
                  IntegralityError);
}

TEST_CASE("parse_problem rejects malformed documents with a field path") {
  auto message = [](const char* text) -> std::string {
    try {
      parse_problem(json::parse(text));
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(message(R"({"features":[[0,1]], "targets":["1/2"]})").rfind("m:", 0) == 0);
  CHECK(message(R"({"m":2, "features":[[0,1,2]], "targets":["1/2"]})").rfind("features[0]", 0) == 0);
  CHECK(message(R"({"m":2, "features":[[0,1]], "targets":[0.5]})").rfind("targets[0]", 0) == 0);
  CHECK(message(R"({"m":2, "features":[[0,1]], "targets":["1/x"]})").rfind("targets[0]", 0) == 0);
  CHECK(message(R"({"m":2, "features":[[0,1]]})").find("exactly one") != std::string::npos);
  CHECK(message(R"({"m":2, "features":[[0,1]], "targets":["1/2"], "samples":[1]})") != "");
  CHECK(message(R"({"m":2, "features":[[0,1]], "samples":[3]})").rfind("samples[0]", 0) == 0);
  CHECK(message(R"({"m":2, "features":[[0,1]], "targets":["1/2"], "prior":["1/2","1/3"]})")
            .rfind("prior", 0) == 0);
  CHECK(message(R"({"m":2, "features":[[0,1]], "targets":["1/2"], "colour":1})").rfind("colour", 0) ==
        0);
  CHECK(message(R"([1, 2])").rfind("$", 0) == 0);
  CHECK_THROWS_AS(read_json("/nonexistent/problem.json"), ParseError);
}

TEST_CASE("property: problem files round-trip") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 30; ++k) {
    const auto inst = testing::random_instance(rng, 8, 3);
    for (const auto* p : {&inst.with_targets, &inst.with_samples}) {
      CHECK(parse_problem(serialize_problem(*p)) == *p);
      CHECK(parse_problem(json::parse(serialize_problem(*p).dump())) == *p);
    }
    const auto with_prior = me::MaxEntProblem::with_targets(
        inst.with_targets.m(), inst.with_targets.features(), *inst.with_targets.targets(),
        testing::random_prior(rng, inst.with_targets.m()));
    CHECK(parse_problem(serialize_problem(with_prior)) == with_prior);
  }
}

TEST_CASE("estimate on the die with verification") {
  const auto r = run({"estimate", "--input", fixture("die.json"), "--method", "direct", "--verify"});
  REQUIRE(r.code == kSuccess);
  const auto doc = json::parse(r.out);
  CHECK(doc["method"] == "direct");
  CHECK(doc["verify"]["gap"].get<double>() <= 1e-8);
  CHECK(doc["distribution"].size() == 6);
  CHECK(doc["certificates"].size() == 1);
  CHECK(doc["diagnostics"]["root_count"] == 1);
  double total = 0.0;
  for (const auto& x : doc["distribution"]) total += x.get<double>();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.err.find("gap") != std::string::npos);
}

TEST_CASE("estimate writes the solution file and a report") {
  const std::string path = "test_cli_solution.json";
  const auto r = run({"estimate", "--input", fixture("prior.json"), "--method", "min-i-div", "--output", path});
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.find("kl_to_prior") != std::string::npos);
  const auto doc = read_json(path);
  CHECK(doc["distribution_exact"] == json({"1/10", "1/5", "3/10", "2/5"}));
  CHECK(doc.contains("kl_to_prior"));

  const auto chk = run({"check", "--input", fixture("prior.json"), "--distribution", path});
  REQUIRE(chk.code == kSuccess);
  CHECK(json::parse(chk.out)["verdict"] == "pass");
}

TEST_CASE("exit codes") {
  CHECK(run({"estimate", "--input", fixture("infeasible.json")}).code == kInfeasible);
  const auto boundary = run({"estimate", "--input", fixture("boundary.json")});
  CHECK(boundary.code == kInfeasible);
  CHECK(boundary.err.find("boundary") != std::string::npos);
  CHECK(run({"estimate", "--input", fixture("degree_guard.json")}).code == kSizeGuard);
  CHECK(run({"estimate", "--input", fixture("nonintegral.json")}).code == kInvalidInput);
  CHECK(run({"estimate", "--input", fixture("missing.json")}).code == kInvalidInput);
  CHECK(run({"estimate", "--input", fixture("die.json"), "--method", "dual"}).code == kInvalidInput);
  CHECK(run({"estimate", "--input", fixture("die.json"), "--method", "simplex"}).code == kInvalidInput);
  CHECK(run({"estimate", "--input", fixture("die.json"), "--tol", "0"}).code == kInvalidInput);
  CHECK(run({"estimate"}).code == kInvalidInput);
  CHECK(run({"frobnicate"}).code == kInvalidInput);
  CHECK(run({}).code == kInvalidInput);
  CHECK(run({"--help"}).code == kSuccess);
  CHECK(run({"sample-sums", "--input", fixture("die.json")}).code == kInvalidInput);
}

TEST_CASE("exit codes are deterministic") {
  for (const char* f : {"die.json", "infeasible.json", "boundary.json", "degree_guard.json"}) {
    const auto a = run({"estimate", "--input", fixture(f)});
    const auto b = run({"estimate", "--input", fixture(f)});
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("toric-ideal subcommand") {
  const auto r = run({"toric-ideal", "--input", fixture("indep22.json")});
  REQUIRE(r.code == kSuccess);
  const auto doc = json::parse(r.out);
  REQUIRE(doc["generators"].size() == 1);
  CHECK(doc["generators"][0] == "x1*x4 - x2*x3");
}

TEST_CASE("check subcommand flags non-model points") {
  const std::string path = "test_cli_point.json";
  {
    std::ofstream f(path);
    f << "[0.3, 0.3, 0.4]";
  }
  const auto r = run({"check", "--input", fixture("samples.json"), "--distribution", path});
  REQUIRE(r.code == kSuccess);
  const auto doc = json::parse(r.out);
  CHECK(doc["verdict"] == "fail");
  CHECK_FALSE(doc["toric_member"].get<bool>());
  CHECK(doc.contains("witness"));
}

TEST_CASE("sample-sums subcommand") {
  const auto r = run({"sample-sums", "--input", fixture("samples.json")});
  REQUIRE(r.code == kSuccess);
  const auto doc = json::parse(r.out);
  CHECK(doc["sigma"] == json({8}));
  CHECK(doc["t_bar"] == json({"4/3"}));
  CHECK(doc["N"] == 6);
}

TEST_CASE("MAXENT_LOG controls diagnostics") {
  setenv("MAXENT_LOG", "info", 1);
  auto r = run({"estimate", "--input", fixture("die.json")});
  CHECK(r.code == kSuccess);
  CHECK(r.err.find("[maxent]") != std::string::npos);
  setenv("MAXENT_LOG", "debug", 1);
  r = run({"estimate", "--input", fixture("die.json")});
  CHECK(r.err.find("buchberger") != std::string::npos);
  setenv("MAXENT_LOG", "quiet", 1);
  r = run({"estimate", "--input", fixture("die.json")});
  CHECK(r.err.empty());
  setenv("MAXENT_LOG", "verbose", 1);
  CHECK(run({"estimate", "--input", fixture("die.json")}).code == kInvalidInput);
  unsetenv("MAXENT_LOG");
}

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "maxent/model/problem.hpp"

namespace maxent::cli {

using nlohmann::json;

/// Problem file: {"m", "features", "targets" | "samples", "prior"?, "names"?}.
/// Rationals are strings ("9/2") or JSON integers. Throws ParseError naming
/// the offending field, IntegralityError for non-integer features, and
/// InvalidArgument when the parsed data fail problem validation.
me::MaxEntProblem parse_problem(const json& doc);
me::MaxEntProblem parse_problem(const std::filesystem::path& path);

json serialize_problem(const me::MaxEntProblem& problem);

json solution_to_json(const me::Solution& solution);

/// A distribution from a solution file (its "distribution" field) or a bare
/// array of numbers.
me::Distribution parse_distribution(const json& doc);
me::Distribution parse_distribution(const std::filesystem::path& path);

/// Reads and parses a JSON file; ParseError on I/O or syntax failure.
json read_json(const std::filesystem::path& path);

/// Human-readable summary with values rounded to 6 significant digits.
std::string format_report(const me::Solution& solution, const me::MaxEntProblem& problem);

}  // namespace maxent::cli

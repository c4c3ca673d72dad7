#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace maxent {

/// Failure categories shared by every module. The CLI maps these onto
/// process exit codes.
enum class ErrorKind {
  arithmetic,
  invalid_argument,
  size_guard,
  dimension,
  infeasible,
  boundary,
  convergence,
  conditioning,
  parse,
  integrality,
  convention,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ArithmeticError : public Error {
 public:
  explicit ArithmeticError(const std::string& what)
      : Error(ErrorKind::arithmetic, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::invalid_argument, what) {}
};

/// Raised when a resource bound (degree, basis size, problem size) is hit.
/// Never truncates silently.
class SizeGuardError : public Error {
 public:
  explicit SizeGuardError(const std::string& what)
      : Error(ErrorKind::size_guard, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorKind::dimension, what) {}
};

class InfeasibleError : public Error {
 public:
  explicit InfeasibleError(const std::string& what)
      : Error(ErrorKind::infeasible, what) {}
};

class BoundaryError : public Error {
 public:
  explicit BoundaryError(const std::string& what)
      : Error(ErrorKind::boundary, what) {}
};

class ConditioningError : public Error {
 public:
  explicit ConditioningError(const std::string& what)
      : Error(ErrorKind::conditioning, what) {}
};

/// Iterative method stopped before reaching tolerance. Carries the last
/// iterate so callers can inspect how far it got.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate = {},
                   std::size_t iterations = 0)
      : Error(ErrorKind::convergence, what),
        last_iterate_(std::move(last_iterate)),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  std::size_t iterations_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what)
      : Error(ErrorKind::parse, what) {}
};

class IntegralityError : public Error {
 public:
  explicit IntegralityError(const std::string& what)
      : Error(ErrorKind::integrality, what) {}
};

class ConventionError : public Error {
 public:
  explicit ConventionError(const std::string& what)
      : Error(ErrorKind::convention, what) {}
};

}  // namespace maxent

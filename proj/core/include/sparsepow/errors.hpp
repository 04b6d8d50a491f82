#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sparsepow {

enum class ErrorKind {
  MalformedSpec,
  InvalidBoundary,
  DegenerateWindow,
  Range,
  Domain,
  Singularity,
  DivergentSeries,
  SingularOperator,
  NumericalFailure,
  BudgetExceeded,
  NotConverged,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sparsepow

#pragma once

#include <stdexcept>
#include <string>

namespace ncwigner {

/// Failure classes; each maps onto a distinct CLI exit code.
enum class ErrorCategory {
  usage = 2,
  physics = 3,
  grid_coverage = 4,
  numeric = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  ErrorCategory category_;
};

/// A physical precondition does not hold (e.g. theta*eta >= hbar^2, beat ratio >= 1).
class PhysicsError : public Error {
 public:
  explicit PhysicsError(const std::string& what) : Error(ErrorCategory::physics, what) {}
};

/// A sampling grid cannot resolve the state it is asked to hold.
class GridCoverageError : public Error {
 public:
  explicit GridCoverageError(const std::string& what)
      : Error(ErrorCategory::grid_coverage, what) {}
};

/// A numerical procedure has no meaningful answer (flat objective, bad domain).
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what) : Error(ErrorCategory::numeric, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorCategory::usage, what) {}
};

}  // namespace ncwigner

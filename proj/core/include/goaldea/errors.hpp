#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace goaldea {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad user input: malformed files, schema violations, incoherent goals.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The numerical machinery could not produce an answer.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Pivoting could not proceed within the fixed tolerances.
class NumericalBreakdown : public SolverError {
 public:
  using SolverError::SolverError;
};

/// Branch-and-bound exhausted its node budget before proving optimality.
class NodeLimitExceeded : public SolverError {
 public:
  explicit NodeLimitExceeded(std::size_t limit)
      : SolverError("branch-and-bound node limit of " + std::to_string(limit) +
                    " exceeded"),
        limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// Face enumeration was asked to handle an instance above its size cap.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

enum class IssueCode {
  InvalidSchema,
  NonPositiveValue,
  UnknownVariable,
  MissingValue,
  DuplicateDmu,
  UnknownDmu,
  IncoherentGoalCoverage,
  MissingGoalRow,
};

const char* to_string(IssueCode code) noexcept;

struct Issue {
  IssueCode code;
  std::string message;

  friend bool operator==(const Issue&, const Issue&) = default;
};

/// Carries every violation found by validation, not only the first.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<Issue> issues);

  const std::vector<Issue>& issues() const noexcept { return issues_; }
  bool has(IssueCode code) const noexcept;

 private:
  std::vector<Issue> issues_;
};

}  // namespace goaldea

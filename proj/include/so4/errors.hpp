#pragma once

#include <stdexcept>
#include <string>

namespace so4 {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested factorial exceeds the configured table limit.
class TableCapacityError : public std::length_error {
 public:
  TableCapacityError(int requested, int limit)
      : std::length_error("factorial table limit " + std::to_string(limit) +
                          " exceeded: need at least " +
                          std::to_string(requested)),
        needed_(requested) {}
  int needed_limit() const noexcept { return needed_; }

 private:
  int needed_;
};

/// Symbol arguments that violate the parity/range invariants of the transform.
class InadmissibleInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An identity that must hold by construction was violated.
class InternalConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed text in the exact-value grammar.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace so4

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mackey {

/// Malformed textual input: group specs, poset files, generator files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but violates a mathematical precondition.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured enumeration budget was exceeded.
class BudgetExceeded : public DomainError {
 public:
  BudgetExceeded(const std::string& what, std::size_t found) : DomainError(what), found_(found) {}
  /// How many objects had been produced when the budget tripped.
  [[nodiscard]] std::size_t found() const { return found_; }

 private:
  std::size_t found_;
};

/// Two computations that must agree did not.
class CrossCheckError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mackey

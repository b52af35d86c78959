#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "zdim/count.hpp"

namespace zdim {

// Base for every domain error raised by the library. The CLI maps
// UsageError to exit status 2 and everything else derived from Error to 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DepthError : public Error {
 public:
  using Error::Error;
};

class InfeasibleError : public Error {
 public:
  using Error::Error;
};

class RuleError : public Error {
 public:
  using Error::Error;
};

// Streaming ran past the enumeration budget; carries the count reached.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(Count partial, std::uint64_t budget);

  const Count& partial() const noexcept { return partial_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  Count partial_;
  std::uint64_t budget_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class CodeError : public Error {
 public:
  explicit CodeError(std::vector<std::string> violations);

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace zdim

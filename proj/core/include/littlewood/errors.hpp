#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace littlewood {

// Raised when an exponent pair violates 1/a + 1/b <= 3/2.
class AdmissibilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when an exact enumeration would exceed its configured cap or budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t required, std::uint64_t limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t limit() const noexcept { return limit_; }

 private:
  std::uint64_t required_;
  std::uint64_t limit_;
};

// Raised by JSON/CLI readers; `field()` names the offending input field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A ratio whose denominator vanishes (zero coefficient vector, zero form).
class UndefinedRatioError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace littlewood

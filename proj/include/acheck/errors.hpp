#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace acheck {

// Caller violated an operation's precondition (mismatched moduli, wrong circuit class, ...).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("division by zero in prime field") {}
};

// Malformed input file. `offset` is a byte offset for binary inputs and a
// line number for text inputs.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::uint64_t offset)
      : std::runtime_error(what + " (at " + std::to_string(offset) + ")"), offset_(offset) {}
  explicit FormatError(const std::string& what) : std::runtime_error(what), offset_(0) {}

  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

// A configured resource limit (time, basis size, enumeration branches) was hit.
class ResourceExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace acheck

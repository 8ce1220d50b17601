#pragma once

#include <stdexcept>
#include <string>

namespace oracle_lab {

// Invalid configuration value or out-of-range index supplied by a caller.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's mathematical domain (empty input,
// time before origin).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a precondition on shapes or lengths.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// File could not be created, written or read.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oracle_lab

#pragma once

#include <stdexcept>
#include <string>

namespace mtd {

/// Precondition on a mathematical argument violated (empty set, bad range).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quantity that would be infinite, e.g. an ETTR with no common channel.
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Internal consistency broken. Never raised by a correct run.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Scenario sampling gave up (e.g. connectivity never reached).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed experiment configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtd

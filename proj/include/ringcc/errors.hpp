#pragma once

#include <stdexcept>
#include <string>

namespace ringcc {

/// Two bodies (or a body and a sampled point) closer than the separation guard.
class CoincidenceError : public std::runtime_error {
 public:
  explicit CoincidenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Both the central mass and the ring mass vanish; no rotation rate exists.
class DegenerateSystemError : public std::domain_error {
 public:
  explicit DegenerateSystemError(const std::string& what) : std::domain_error(what) {}
};

/// A quantity whose square must be non-negative came out negative.
class ImaginaryFrequencyError : public std::domain_error {
 public:
  ImaginaryFrequencyError(const std::string& what, double radicand)
      : std::domain_error(what), radicand_(radicand) {}

  [[nodiscard]] double radicand() const noexcept { return radicand_; }

 private:
  double radicand_;
};

/// Raised when a formula hits its singular point (e.g. a vanishing denominator).
class SingularityError : public std::domain_error {
 public:
  explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

/// Numerical integration produced non-finite state.
class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

/// A requested libration point does not exist for the given system.
class NoLibrationPointError : public std::runtime_error {
 public:
  explicit NoLibrationPointError(const std::string& what) : std::runtime_error(what) {}
};

/// A sampled series is too short for the requested measurement.
class InsufficientDataError : public std::invalid_argument {
 public:
  explicit InsufficientDataError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ringcc

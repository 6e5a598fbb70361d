#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zmeta {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Argument within the exclusion radius of a pole.
class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, std::complex<double> pole, double distance)
      : std::domain_error(what), pole_(pole), distance_(distance) {}

  std::complex<double> pole() const noexcept { return pole_; }
  double distance() const noexcept { return distance_; }

 private:
  std::complex<double> pole_;
  double distance_;
};

// Iterative procedure failed to reach its accuracy target.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, double estimate, double error)
      : std::runtime_error(what), estimate_(estimate), error_(error) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }

 private:
  double estimate_;
  double error_;
};

// Bracketing or level search exhausted its schedule.
class SearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed object violates the identity it is supposed to satisfy.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke an operation's precondition contract.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Invalid configuration or command line.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace zmeta

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relaxshock {

/// Process exit codes used by the command line front end.
enum class ExitCode : int {
  success = 0,
  config = 2,
  blow_up = 3,
  validation = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::config; }
};

/// Invalid or inconsistent configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// End states or relaxation time violate a shock admissibility bound.
class AdmissibilityError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Profile ODE denominator dropped below its safety floor.
class StiffnessError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::blow_up; }
};

/// Non-finite value or non-positive specific volume after a solver step.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, std::size_t i, std::size_t j, std::size_t k, double t)
      : Error(what), i_(i), j_(j), k_(k), t_(t) {}
  ExitCode exit_code() const noexcept override { return ExitCode::blow_up; }
  std::size_t i() const noexcept { return i_; }
  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }
  double time() const noexcept { return t_; }

 private:
  std::size_t i_, j_, k_;
  double t_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::validation; }
};

}  // namespace relaxshock

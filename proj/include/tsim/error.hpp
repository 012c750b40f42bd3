#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tsim {

// Argument outside the documented domain of a closed-form or builder function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// apparent_time(0, 0): no processing and no transfer is not an event.
class DegenerateInputError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A measured value the analytic model cannot produce (e.g. speedup > r).
class ModelViolationError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Gate fed with the wrong number of inputs.
class ArityError : public DomainError {
 public:
  using DomainError::DomainError;
};

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchedulingError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

class LivelockError : public SimulationError {
 public:
  LivelockError(const std::string& message, std::vector<std::string> cycle)
      : SimulationError(message), cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const noexcept { return cycle_; }

 private:
  std::vector<std::string> cycle_;
};

class ScenarioError : public std::runtime_error {
 public:
  enum class Code { syntax, schema, duplicate_id, dangling_reference };

  ScenarioError(Code code, std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        code_(code),
        path_(std::move(path)) {}

  Code code() const noexcept { return code_; }
  // JSON pointer of the offending value, or "line L, column C" for syntax errors.
  const std::string& path() const noexcept { return path_; }

 private:
  Code code_;
  std::string path_;
};

}  // namespace tsim

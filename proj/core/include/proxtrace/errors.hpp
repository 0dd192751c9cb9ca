#pragma once

#include <stdexcept>
#include <string>

namespace proxtrace {

/// Malformed or inconsistent user input: config files, trajectory CSVs.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A fixed/auto stepsize exceeded 1/L while the guarantee was requested.
class GuaranteeViolation : public std::runtime_error {
public:
  GuaranteeViolation(std::size_t iteration, double stepsize, double limit);
  std::size_t iteration() const { return iteration_; }
  double stepsize() const { return stepsize_; }

private:
  std::size_t iteration_;
  double stepsize_;
};

/// Backtracking exhausted its shrink budget without passing the acceptance
/// test; usually a non-Lipschitz gradient or a misconfigured oracle.
class BacktrackError : public std::runtime_error {
public:
  explicit BacktrackError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace proxtrace

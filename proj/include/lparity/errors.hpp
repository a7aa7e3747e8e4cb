#pragma once

#include <stdexcept>
#include <string>

namespace lparity {

/// Raised when a computation would exceed its configured order limit.
/// Callers that can degrade (CLI, claim registry) report "skipped-cost".
class CostGuardError : public std::runtime_error {
 public:
  CostGuardError(std::string guard, int order, int limit)
      : std::runtime_error(guard + ": order " + std::to_string(order) + " exceeds limit " + std::to_string(limit)),
        guard_(std::move(guard)),
        limit_(limit) {}

  const std::string& guard() const { return guard_; }
  int limit() const { return limit_; }

 private:
  std::string guard_;
  int limit_;
};

}  // namespace lparity

#pragma once

#include <stdexcept>
#include <string>

namespace egue {

/// Raised when an argument lies outside the domain of a formula or builder.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a request would exceed a configured cost guard (dimension caps).
class CostGuardError : public std::runtime_error {
public:
  explicit CostGuardError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace egue

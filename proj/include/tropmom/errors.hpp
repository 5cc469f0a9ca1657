#pragma once

#include <stdexcept>
#include <string>

namespace tropmom {

/// Malformed input: dimension mismatches, schema violations, bad arguments.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/// A mathematical hypothesis required by a computation does not hold.
class PreconditionError : public std::domain_error {
 public:
  explicit PreconditionError(const std::string& what) : std::domain_error(what) {}
};

/// A size guard tripped before an expensive computation was attempted.
class ResourceError : public std::length_error {
 public:
  explicit ResourceError(const std::string& what) : std::length_error(what) {}
};

}  // namespace tropmom

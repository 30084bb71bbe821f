#pragma once

#include <stdexcept>
#include <string>

namespace sqpart {

// Error taxonomy shared by the library and the command-line front end.
// Each class maps to one process exit code in the CLI.

/// Invalid argument or precondition violation (exit code 2).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured memory or size cap would be exceeded (exit code 3).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical procedure failed to converge or produced a non-finite value (exit code 4).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sqpart

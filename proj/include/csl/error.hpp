#pragma once

#include <stdexcept>
#include <string>

namespace csl {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input that cannot be turned into a valid object (missing subsets, bad JSON shapes, NaNs).
class MalformedInput : public Error {
 public:
  explicit MalformedInput(const std::string& what) : Error(what) {}
};

/// A documented precondition of an operation does not hold for the given arguments.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Enumeration size or ground-set size beyond the supported guards.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(what) {}
};

/// Two objects built on different ground sets were combined.
class GroundMismatch : public Error {
 public:
  explicit GroundMismatch(const std::string& what) : Error(what) {}
};

}  // namespace csl

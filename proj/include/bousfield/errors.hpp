#pragma once

#include <stdexcept>
#include <string>

namespace bousfield {

/// Malformed set, class or module expression.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation was called outside its domain (bad prime, non-partition,
/// family too large for the prime universe, ...).
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// A value left the representable range (period or prime power overflow).
class RangeError : public std::runtime_error {
 public:
  explicit RangeError(const std::string& what) : std::runtime_error(what) {}
};

/// A certificate or oracle cross-check did not hold.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bousfield

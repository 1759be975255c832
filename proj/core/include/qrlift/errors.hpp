#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qrlift {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text: ring specs, element literals, chain descriptions.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error("parse error at offset " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Invalid arguments in programmatic use: wrong ring, out-of-range index,
// non-unit where a unit is required, and the like.
class DomainError : public Error {
 public:
  using Error::Error;
};

// An operation would enumerate more elements than the configured cap allows.
class CapError : public Error {
 public:
  using Error::Error;
};

// A mathematical hypothesis of the requested operation does not hold for the
// given inputs (a coset that is not invertible, a non-nil ideal, ...).
// Operations that throw this are refusing to compute, not failing internally.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// Chain validation failure. Records which of the three conditions broke and
// at which link (1-based, counting from the largest ideal).
class CncError : public HypothesisError {
 public:
  enum class Condition { Chain, Nilpotency, Characteristic };

  CncError(Condition condition, std::size_t link, const std::string& message)
      : HypothesisError(message), condition_(condition), link_(link) {}

  Condition condition() const { return condition_; }
  std::size_t link() const { return link_; }

 private:
  Condition condition_;
  std::size_t link_;
};

}  // namespace qrlift

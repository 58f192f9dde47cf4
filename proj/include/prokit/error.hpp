#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prokit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Boundary mismatch when composing morphisms or assembling a morphism family.
class CompositionError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on inputs that violate its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A query the index set cannot answer (e.g. predecessors of an opaque poset).
class UnsupportedQuery : public Error {
 public:
  using Error::Error;
};

/// A witness search ran off the end of the window. Not a refutation.
class InconclusiveError : public Error {
 public:
  InconclusiveError(const std::string& what, std::size_t horizon)
      : Error(what + " (horizon " + std::to_string(horizon) + ")"), horizon_(horizon) {}
  std::size_t horizon() const noexcept { return horizon_; }

 private:
  std::size_t horizon_;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace prokit

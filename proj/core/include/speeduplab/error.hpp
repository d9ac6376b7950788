#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speeduplab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A symbol or value outside the declared alphabet / range.
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A finite orbit prefix was too short for the requested computation.
class HorizonError : public Error {
 public:
  HorizonError(const std::string& what, std::size_t achieved)
      : Error(what), achieved_(achieved) {}
  std::size_t achieved() const noexcept { return achieved_; }

 private:
  std::size_t achieved_;
};

class InconclusiveError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

/// A malformed input document; the message names the offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Raised when a derived structure contradicts an invariant that must hold
/// for valid input (e.g. label counts differing across columns).
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace speeduplab

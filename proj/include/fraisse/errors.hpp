#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fraisse {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown or clashing symbol names, mismatched vocabularies, arity problems.
class VocabularyError : public Error {
 public:
  using Error::Error;
};

/// Elements or tuples that fall outside a structure's universe.
class InvalidSubsetError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A P2 set that is not 1-adequate was used where one is required.
class AdequacyError : public Error {
 public:
  using Error::Error;
};

/// Requested one-point extension is not permitted by the pattern table.
class ExtensionError : public Error {
 public:
  using Error::Error;
};

/// An operation needs a saturation level the oracle does not have.
class SaturationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input for a construction (non-graph base, carrier mismatch).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A searched-for configuration does not occur.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

}  // namespace fraisse

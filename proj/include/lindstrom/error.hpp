#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lindstrom {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed caller input: bad arguments, inconsistent contexts, non-prime p.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public InvalidArgument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InvalidArgument(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public ParseError {
 public:
  UnknownVariable(const std::string& name, std::size_t position)
      : ParseError("unknown variable '" + name + "'", position), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Polynomials or ideals from different rings were combined.
class ContextMismatch : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// An elimination ideal that should be principal was not. Signals that the
// queried set was not a circuit or that the input ideal was not prime.
class NotPrincipal : public Error {
 public:
  using Error::Error;
};

// Two exchange paths assigned different values to the same basis.
class InconsistentValuation : public Error {
 public:
  using Error::Error;
};

}  // namespace lindstrom

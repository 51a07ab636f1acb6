#pragma once

#include <stdexcept>
#include <string>

namespace toristack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (rank mismatch,
/// non-simplicial cone where a simplicial one is required, bad level, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computed invariant disagreed with a result that must hold for every
/// valid input. Always indicates a bug in this library.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace toristack

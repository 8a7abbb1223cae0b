#pragma once

#include <stdexcept>
#include <string>

namespace qrmix {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A group descriptor could not be parsed or the group could not be built.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An input violated an operation's precondition (norm bounds, orthogonality,
/// sample counts, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Observables or families defined on different probability spaces.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// The Dixon pipeline could not produce a full decomposition.
class CharacterError : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qrmix

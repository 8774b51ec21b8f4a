#pragma once

#include <stdexcept>
#include <string>

namespace pmis {

// Base class for every error raised by the library. The CLI maps the three
// concrete families onto exit codes 1 (ingest), 2 (config), 3 (numerical).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable, malformed or inconsistent input data.
class IngestError : public Error {
 public:
  using Error::Error;
};

// Invalid options or parameter combinations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Failure inside the numeric core (non-finite values, failed factorization).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A frame pair for which the similarity is undefined: zero-variance frames
// for PMI, zero-norm frames for cosine. Scoring maps these to maximal
// similarity instead of failing.
class DegenerateInputError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pmis

#pragma once

#include <stdexcept>
#include <string>

namespace cliniqa {

/// Malformed input file or record. The message names the offending record or line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input that parses but violates a data invariant (dangling reference, out of range index).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model was used before training, or loaded from an incompatible file.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cliniqa

namespace cliniqa {

/// The pipeline cannot serve: a required artifact is missing or stale. The
/// message carries a remediation hint.
class ServiceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cliniqa

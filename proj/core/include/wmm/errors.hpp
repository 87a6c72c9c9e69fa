#pragma once

// Error taxonomy shared by the library and the CLI exit-code contract.

#include <stdexcept>
#include <string>

namespace wmm {

/// A configured guard (enumeration size, word length, series order...) was
/// exceeded. The CLI maps this to exit status 3.
class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible matrix/vector dimensions.
class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Malformed external input (covariance files, rational literals, flags).
/// The CLI maps this to exit status 2.
class ParseError : public std::invalid_argument {
 public:
  explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace wmm

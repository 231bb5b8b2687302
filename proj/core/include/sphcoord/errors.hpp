#pragma once

#include <stdexcept>
#include <string>

namespace sphcoord {

/// Malformed input or a violated precondition the caller could have checked.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested topological feature does not exist or cannot be realized
/// (empty barcode, failed integer lift, representative that is not a cocycle).
class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite values, a violated homotopy guard, or similar numerical failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sphcoord

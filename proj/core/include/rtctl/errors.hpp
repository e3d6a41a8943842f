#pragma once

#include <stdexcept>

namespace rtctl {

/// Invalid configuration, rejected before any simulation starts.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The pending queue outgrew the configured guard.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares data that cannot determine the model parameters.
class IdentifiabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rtctl

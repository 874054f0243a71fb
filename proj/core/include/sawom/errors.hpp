#pragma once

#include <stdexcept>
#include <string>

namespace sawom {

// Input rejected before any computation ran (bad argument, bad config field).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A well-formed request whose computation could not complete
// (fit divergence, no resonance in a trace, geometry collision).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sawom

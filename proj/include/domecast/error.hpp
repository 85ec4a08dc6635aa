#pragma once

#include <stdexcept>

namespace domecast {

// Input data violates a model requirement: malformed catalog rows, missing
// silica for the regression model, too few completed eruptions.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An optimizer, root finder or sampler could not produce a usable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace domecast

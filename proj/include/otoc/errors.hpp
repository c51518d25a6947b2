#pragma once

#include <stdexcept>
#include <string>

namespace otoc {

class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A state, table or distribution violates its normalization or positivity
/// contract beyond tolerance.
class NormalizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rotation angles for which the imaginary-part prefactor vanishes.
class DegenerateAngleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The dressed eigenstate connected to |gg> could not be identified.
class AdiabaticityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace otoc

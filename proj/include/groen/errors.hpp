#pragma once
#include <stdexcept>

namespace groen {

// Quadrature non-convergence, eigensolver stagnation, symmetry violations, ...
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A density that should integrate to 1 does not.
struct normalization_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

} // namespace groen

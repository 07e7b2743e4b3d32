#pragma once

#include <stdexcept>
#include <string>

namespace sympman {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape disagreement between operands (incl. odd dimensions where an even
// 2p x 2q layout is required).
struct DimensionError : Error {
  using Error::Error;
};

// A linear solve hit a pivot below the singularity threshold.
struct SingularMatrixError : Error {
  using Error::Error;
};

// An iterative kernel (square root, logarithm, inverse scaling) ran out of
// its iteration budget without meeting its residual target.
struct ConvergenceError : Error {
  using Error::Error;
};

// Input outside the mathematical domain of the map (nonpositive real
// spectrum for logm/sqrtm, endpoints outside an inverse-retraction chart).
struct DomainError : Error {
  using Error::Error;
};

// A value failed a structural requirement: tangency, horizontality,
// membership of a constrained algebra, feasibility of a constructed point.
struct StructureError : Error {
  using Error::Error;
};

// The line search could not produce any evaluable trial step.
struct StepFailureError : Error {
  using Error::Error;
};

}  // namespace sympman

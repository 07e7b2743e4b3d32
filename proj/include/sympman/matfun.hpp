#pragma once

#include "sympman/matrix.hpp"

namespace sympman {

// Matrix exponential: scaling-and-squaring with diagonal Pade approximants,
// order picked from the 1-norm (degrees 3/5/7/9/13).
Matrix expm(const Matrix& x);

// Principal matrix logarithm: repeated principal square roots until the
// argument is close to I, then a degree-8 partial-fraction Pade of log(I+E),
// undone by the power of two. Requires the spectrum off the closed negative
// real axis; violations surface as DomainError (detected directly for
// triangular input) or ConvergenceError from the square-root iteration.
Matrix logm(const Matrix& x);

// Principal matrix square root by the scaled product-form Denman-Beavers
// iteration. Same domain restriction as logm.
Matrix sqrtm(const Matrix& x);

// Cayley transform (I+X)(I-X)^{-1}, one linear solve. Throws
// SingularMatrixError when 1 is an eigenvalue of X.
Matrix cay(const Matrix& x);

// Inverse Cayley transform (M-I)(I+M)^{-1}. Throws SingularMatrixError when
// -1 is an eigenvalue of M.
Matrix cay_inv(const Matrix& m);

}  // namespace sympman

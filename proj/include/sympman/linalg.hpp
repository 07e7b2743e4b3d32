#pragma once

#include <vector>

#include "sympman/matrix.hpp"

namespace sympman {

// Result of a partially pivoted LU factorization A = P L U, stored packed.
struct LuFactors {
  Matrix lu;              // L below the diagonal (unit), U on and above
  std::vector<int> perm;  // row swapped with row i at step i
  double min_pivot = 0.0;
  double singular_threshold = 0.0;
  // <= so the all-zero matrix (threshold 0, pivot 0) still counts as singular.
  bool singular() const { return min_pivot <= singular_threshold; }
};

// Factorization never throws on rank deficiency; solves do. The singularity
// rule is pivot < 1e-13 * ||A||_inf.
LuFactors lu_factor(const Matrix& a);

// Solve A X = RHS from the factorization. Throws SingularMatrixError if the
// factorization is singular by the rule above.
Matrix lu_solve(const LuFactors& f, const Matrix& rhs);

// One-shot A X = RHS.
Matrix solve(const Matrix& a, const Matrix& rhs);

// X A^{-1}, evaluated as solve(A^T, X^T)^T without forming inverses.
Matrix right_solve(const Matrix& x, const Matrix& a);

// log|det A| from an existing factorization (sign discarded; used for the
// determinant scaling inside the square-root iteration).
double log_abs_det(const LuFactors& f);

// Lower Cholesky factor of an SPD matrix; throws StructureError if the
// matrix is not positive definite to working precision.
Matrix cholesky_factor(const Matrix& spd);

// Solve (L L^T) X = RHS given the lower factor.
Matrix cholesky_solve(const Matrix& l, const Matrix& rhs);

// Largest singular value by power iteration on A^T A: 50 iterations with
// early exit once the estimate is stable to 1e-8 relative.
double spectral_norm(const Matrix& a);

}  // namespace sympman

#include "sympman/symplectic.hpp"

#include <cstddef>

#include "sympman/errors.hpp"

namespace sympman {

Matrix poisson_apply(Side side, bool transpose, const Matrix& m) {
  if (side == Side::left) {
    if (m.rows() % 2 != 0) {
      throw DimensionError("poisson_apply: row count must be even");
    }
    const std::size_t p = m.rows() / 2;
    const std::size_t c = m.cols();
    Matrix out(m.rows(), c);
    // J*m swaps the block rows and negates one of them; J^T*m negates the
    // other one.
    if (!transpose) {
      out.set_block(0, 0, m.block(p, 0, p, c));
      out.set_block(p, 0, -m.block(0, 0, p, c));
    } else {
      out.set_block(0, 0, -m.block(p, 0, p, c));
      out.set_block(p, 0, m.block(0, 0, p, c));
    }
    return out;
  }
  if (m.cols() % 2 != 0) {
    throw DimensionError("poisson_apply: column count must be even");
  }
  const std::size_t p = m.cols() / 2;
  const std::size_t r = m.rows();
  Matrix out(r, m.cols());
  if (!transpose) {
    out.set_block(0, 0, -m.block(0, p, r, p));
    out.set_block(0, p, m.block(0, 0, r, p));
  } else {
    out.set_block(0, 0, m.block(0, p, r, p));
    out.set_block(0, p, -m.block(0, 0, r, p));
  }
  return out;
}

Matrix poisson_matrix(std::size_t p) {
  Matrix j(2 * p, 2 * p);
  for (std::size_t i = 0; i < p; ++i) {
    j(i, p + i) = 1.0;
    j(p + i, i) = -1.0;
  }
  return j;
}

Matrix symplectic_inverse(const Matrix& a) {
  if (a.rows() % 2 != 0 || a.cols() % 2 != 0) {
    throw DimensionError("symplectic_inverse: dimensions must be even");
  }
  const std::size_t n = a.rows() / 2;
  const std::size_t k = a.cols() / 2;
  Matrix out(2 * k, 2 * n);
  // A^+ = J_{2k}^T A^T J_{2n} expands to a sign-flipping transpose of the
  // four n x k blocks of A; no multiplications needed.
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      out(i, j) = a(n + j, k + i);
      out(i, n + j) = -a(j, k + i);
      out(k + i, j) = -a(n + j, i);
      out(k + i, n + j) = a(j, i);
    }
  }
  return out;
}

double symplectic_feasibility(const Matrix& u) {
  Matrix r = symplectic_inverse(u) * u;
  for (std::size_t i = 0; i < r.rows(); ++i) r(i, i) -= 1.0;
  return r.frobenius_norm();
}

double hamiltonian_residual(const Matrix& w) {
  if (w.rows() != w.cols()) {
    throw DimensionError("hamiltonian_residual: matrix must be square");
  }
  return (symplectic_inverse(w) + w).frobenius_norm();
}

Matrix canonical_basis(std::size_t n, std::size_t k) {
  if (k > n) {
    throw DimensionError("canonical_basis: need k <= n");
  }
  Matrix e(2 * n, 2 * k);
  for (std::size_t i = 0; i < k; ++i) {
    e(i, i) = 1.0;
    e(n + i, k + i) = 1.0;
  }
  return e;
}

}  // namespace sympman

#include "sympman/random.hpp"

#include <cmath>

#include "sympman/errors.hpp"
#include "sympman/linalg.hpp"
#include "sympman/matfun.hpp"
#include "sympman/symplectic.hpp"

namespace sympman {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - uniform lies in (0, 1], so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * kPi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

Matrix Rng::gaussian_matrix(std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  double* p = m.data();
  const std::size_t count = rows * cols;
  for (std::size_t i = 0; i < count; ++i) p[i] = gaussian();
  return m;
}

Matrix rand_hamiltonian(Rng& rng, std::size_t n) {
  const Matrix a = rng.gaussian_matrix(n, n);
  Matrix b = rng.gaussian_matrix(n, n);
  Matrix c = rng.gaussian_matrix(n, n);
  b = 0.5 * (b + b.transposed());
  c = 0.5 * (c + c.transposed());
  Matrix omega(2 * n, 2 * n);
  omega.set_block(0, 0, a);
  omega.set_block(0, n, b);
  omega.set_block(n, 0, c);
  omega.set_block(n, n, -a.transposed());
  return omega;
}

Matrix rand_symplectic(Rng& rng, std::size_t n) {
  Matrix omega = rand_hamiltonian(rng, n);
  omega *= 1.0 / omega.frobenius_norm();
  return cay(omega);
}

Matrix rand_stiefel_point(Rng& rng, std::size_t n, std::size_t k,
                          StiefelScale scale) {
  if (k < 1 || k > n) {
    throw DimensionError("rand_stiefel_point: need 1 <= k <= n");
  }
  const Matrix e = canonical_basis(n, k);
  const double s = scale == StiefelScale::cay_half ? 0.5 : 1.0;
  for (int attempt = 0;; ++attempt) {
    Matrix omega = rand_hamiltonian(rng, n);
    omega *= s / omega.frobenius_norm();
    // cay(s*Omega)*E without forming the full transform: solve
    // (I - s*Omega) U = (I + s*Omega) E.
    Matrix lhs = -omega;
    Matrix rhs = omega * e;
    for (std::size_t i = 0; i < 2 * n; ++i) lhs(i, i) += 1.0;
    rhs += e;
    try {
      return solve(lhs, rhs);
    } catch (const SingularMatrixError&) {
      if (attempt >= 3) throw;
    }
  }
}

}  // namespace sympman

#include <cmath>

#include "doctest.h"
#include "sympman/errors.hpp"
#include "sympman/linalg.hpp"
#include "sympman/matfun.hpp"
#include "sympman/random.hpp"
#include "sympman/symplectic.hpp"
#include "test_util.hpp"

using namespace sympman;
using testutil::frob_diff;

namespace {

// Well-conditioned test matrix: Gaussian plus a diagonal boost.
Matrix well_conditioned(Rng& rng, std::size_t m) {
  Matrix a = rng.gaussian_matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) a(i, i) += 6.0;
  return a;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("solve recovers a known solution") {
  Rng rng(21);
  const Matrix a = well_conditioned(rng, 20);
  const Matrix x0 = rng.gaussian_matrix(20, 4);
  const Matrix x = solve(a, matmul(a, x0));
  CHECK(frob_diff(x, x0) <= 1e-10 * x0.frobenius_norm());
}

TEST_CASE("lu_solve from a factorization matches one-shot solve") {
  Rng rng(22);
  const Matrix a = well_conditioned(rng, 15);
  const Matrix b = rng.gaussian_matrix(15, 3);
  const LuFactors f = lu_factor(a);
  CHECK_FALSE(f.singular());
  CHECK(frob_diff(lu_solve(f, b), solve(a, b)) == 0.0);
  CHECK(frob_diff(matmul(a, lu_solve(f, b)), b) <= 1e-10 * b.frobenius_norm());
}

TEST_CASE("solve with identity is numerically exact") {
  Rng rng(23);
  const Matrix b = rng.gaussian_matrix(9, 5);
  CHECK(frob_diff(solve(Matrix::identity(9), b), b) == 0.0);
}

TEST_CASE("right_solve multiplies back to the left operand") {
  Rng rng(24);
  const Matrix a = well_conditioned(rng, 8);
  const Matrix x = rng.gaussian_matrix(5, 8);
  CHECK(frob_diff(matmul(right_solve(x, a), a), x) <=
        1e-10 * x.frobenius_norm());
}

TEST_CASE("singular systems are detected and rejected") {
  Matrix a(3, 3, {1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 0.0, 1.0, 4.0});
  CHECK(lu_factor(a).singular());
  CHECK_THROWS_AS(solve(a, Matrix::identity(3)), SingularMatrixError);
  CHECK_THROWS_AS(right_solve(Matrix::identity(3), a), SingularMatrixError);
}

TEST_CASE("log_abs_det on diagonal and symplectic input") {
  Matrix d(3, 3, {2.0, 0.0, 0.0, 0.0, 3.0, 0.0, 0.0, 0.0, 4.0});
  CHECK(std::abs(log_abs_det(lu_factor(d)) - std::log(24.0)) <= 1e-13);

  // det of a symplectic matrix is 1, so log|det| vanishes.
  Rng rng(25);
  const Matrix m = rand_symplectic(rng, 6);
  CHECK(std::abs(log_abs_det(lu_factor(m))) <= 1e-10);
}

TEST_CASE("cholesky factor is lower triangular and reconstructs") {
  Rng rng(26);
  const std::size_t m = 14;
  const Matrix b = rng.gaussian_matrix(m, m);
  Matrix spd = matmul_tn(b, b);
  for (std::size_t i = 0; i < m; ++i) spd(i, i) += static_cast<double>(m);

  const Matrix l = cholesky_factor(spd);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) CHECK(l(i, j) == 0.0);
  CHECK(frob_diff(matmul_nt(l, l), spd) <= 1e-12 * spd.frobenius_norm());

  const Matrix x0 = rng.gaussian_matrix(m, 2);
  const Matrix x = cholesky_solve(l, matmul(spd, x0));
  CHECK(frob_diff(x, x0) <= 1e-10 * x0.frobenius_norm());
}

TEST_CASE("cholesky rejects indefinite input") {
  Matrix indef(2, 2, {1.0, 0.0, 0.0, -1.0});
  CHECK_THROWS_AS(cholesky_factor(indef), StructureError);
}

TEST_CASE("spectral_norm on known matrices") {
  CHECK(std::abs(spectral_norm(Matrix::identity(7)) - 1.0) <= 1e-8);

  Matrix d(3, 3, {3.0, 0.0, 0.0, 0.0, -7.0, 0.0, 0.0, 0.0, 2.0});
  CHECK(std::abs(spectral_norm(d) - 7.0) <= 1e-6);

  // Rank-one u v^T has spectral norm ||u|| ||v||.
  Rng rng(27);
  const Matrix u = rng.gaussian_matrix(10, 1);
  const Matrix v = rng.gaussian_matrix(6, 1);
  const double want = u.frobenius_norm() * v.frobenius_norm();
  CHECK(std::abs(spectral_norm(matmul_nt(u, v)) - want) <= 1e-6 * want);

  // Two-norm never exceeds the Frobenius norm.
  const Matrix a = rng.gaussian_matrix(12, 9);
  CHECK(spectral_norm(a) <= a.frobenius_norm() * (1.0 + 1e-10));
}

}  // TEST_SUITE

#include <cmath>

#include "doctest.h"
#include "sympman/errors.hpp"
#include "sympman/matfun.hpp"
#include "sympman/random.hpp"
#include "sympman/sp_stiefel.hpp"
#include "sympman/symplectic.hpp"
#include "test_util.hpp"

using namespace sympman;
using testutil::frob_diff;

TEST_SUITE("symplectic") {

TEST_CASE("poisson_apply left on the identity gives J") {
  const Matrix j2 = poisson_apply(Side::left, false, Matrix::identity(2));
  CHECK(j2(0, 0) == 0.0);
  CHECK(j2(0, 1) == 1.0);
  CHECK(j2(1, 0) == -1.0);
  CHECK(j2(1, 1) == 0.0);
  CHECK(frob_diff(j2, poisson_matrix(1)) == 0.0);
}

TEST_CASE("poisson_apply involution and square") {
  Rng rng(41);
  const Matrix m = rng.gaussian_matrix(6, 4);
  // J^T J = I and J^2 = -I, applied without forming J.
  const Matrix jm = poisson_apply(Side::left, false, m);
  CHECK(frob_diff(poisson_apply(Side::left, true, jm), m) == 0.0);
  CHECK(frob_diff(poisson_apply(Side::left, false, jm), -m) == 0.0);
}

TEST_CASE("poisson_apply matches explicit J multiplication") {
  Rng rng(42);
  const Matrix m = rng.gaussian_matrix(6, 4);
  const Matrix j6 = poisson_matrix(3);
  const Matrix j4 = poisson_matrix(2);
  CHECK(frob_diff(poisson_apply(Side::left, false, m), matmul(j6, m)) == 0.0);
  CHECK(frob_diff(poisson_apply(Side::left, true, m), matmul_tn(j6, m)) ==
        0.0);
  CHECK(frob_diff(poisson_apply(Side::right, false, m), matmul(m, j4)) == 0.0);
  CHECK(frob_diff(poisson_apply(Side::right, true, m), matmul_nt(m, j4)) ==
        0.0);
}

TEST_CASE("poisson_apply rejects odd dimensions") {
  CHECK_THROWS_AS(poisson_apply(Side::left, false, Matrix(3, 4)),
                  DimensionError);
  CHECK_THROWS_AS(poisson_apply(Side::right, false, Matrix(4, 3)),
                  DimensionError);
}

TEST_CASE("symplectic inverse of the canonical basis") {
  const Matrix e = canonical_basis(5, 2);
  CHECK(frob_diff(matmul(symplectic_inverse(e), e), Matrix::identity(4)) ==
        0.0);
}

TEST_CASE("symplectic inverse of J is its transpose") {
  const Matrix j = poisson_matrix(4);
  CHECK(frob_diff(symplectic_inverse(j), j.transposed()) == 0.0);
}

TEST_CASE("symplectic inverse inverts symplectic matrices") {
  Rng rng(43);
  const Matrix m = rand_symplectic(rng, 10);
  CHECK(frob_diff(matmul(symplectic_inverse(m), m), Matrix::identity(20)) <=
        1e-10);
}

TEST_CASE("symplectic inverse is an involution") {
  Rng rng(44);
  const Matrix a = rng.gaussian_matrix(8, 4);
  CHECK(symplectic_inverse(symplectic_inverse(a)).identical_to(a));
}

TEST_CASE("symplectic inverse reverses products") {
  Rng rng(45);
  const Matrix a = rng.gaussian_matrix(8, 4);
  const Matrix b = rng.gaussian_matrix(4, 6);
  const Matrix lhs = symplectic_inverse(matmul(a, b));
  const Matrix rhs = matmul(symplectic_inverse(b), symplectic_inverse(a));
  CHECK(frob_diff(lhs, rhs) <= 1e-13 * rhs.frobenius_norm());
}

TEST_CASE("symplectic inverse rejects odd dimensions") {
  CHECK_THROWS_AS(symplectic_inverse(Matrix(5, 4)), DimensionError);
  CHECK_THROWS_AS(symplectic_inverse(Matrix(4, 5)), DimensionError);
}

TEST_CASE("canonical_basis columns are standard basis vectors") {
  const Matrix e = canonical_basis(3, 1);
  REQUIRE(e.rows() == 6);
  REQUIRE(e.cols() == 2);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const double want = ((j == 0 && i == 0) || (j == 1 && i == 3)) ? 1.0
                                                                     : 0.0;
      CHECK(e(i, j) == want);
    }
  CHECK(symplectic_feasibility(e) == 0.0);
}

TEST_CASE("residual helpers vanish on structured input") {
  Rng rng(46);
  CHECK(hamiltonian_residual(rand_hamiltonian(rng, 7)) == 0.0);
  CHECK(symplectic_feasibility(canonical_basis(4, 2)) == 0.0);
}

TEST_CASE("rng streams are deterministic") {
  Rng a(123), b(123);
  for (int i = 0; i < 100; ++i) CHECK(a.gaussian() == b.gaussian());
  Rng c(123), d(124);
  CHECK(c.uniform() != d.uniform());
  const double u = Rng(7).uniform();
  CHECK(u >= 0.0);
  CHECK(u < 1.0);
}

TEST_CASE("gaussian_matrix is reproducible and shaped") {
  Rng a(55), b(55);
  const Matrix ma = a.gaussian_matrix(5, 3);
  const Matrix mb = b.gaussian_matrix(5, 3);
  REQUIRE(ma.rows() == 5);
  REQUIRE(ma.cols() == 3);
  CHECK(ma.identical_to(mb));
}

TEST_CASE("rand_hamiltonian has exact structure and is reproducible") {
  Rng a(66), b(66);
  const Matrix wa = rand_hamiltonian(a, 9);
  CHECK(hamiltonian_residual(wa) == 0.0);
  CHECK(wa.identical_to(rand_hamiltonian(b, 9)));
}

TEST_CASE("rand_symplectic lands on the group") {
  Rng rng(67);
  CHECK(symplectic_feasibility(rand_symplectic(rng, 10)) <= 1e-10);
}

TEST_CASE("rand_stiefel_point is feasible at both scales") {
  Rng rng(68);
  CHECK(symplectic_feasibility(
            rand_stiefel_point(rng, 100, 10, StiefelScale::cay_one)) <= 1e-10);
  CHECK(symplectic_feasibility(rand_stiefel_point(
            rng, 100, 10, StiefelScale::cay_half)) <= 1e-10);

  Rng a(69), b(69);
  CHECK(rand_stiefel_point(a, 20, 4, StiefelScale::cay_one)
            .identical_to(rand_stiefel_point(b, 20, 4, StiefelScale::cay_one)));
}

TEST_CASE("rand_stiefel_tangent is tangent and unit norm") {
  Rng rng(70);
  const StPoint u =
      StPoint(rand_stiefel_point(rng, 15, 3, StiefelScale::cay_one));
  const StTangent d = rand_stiefel_tangent(rng, u, false);
  const Matrix upd = matmul(symplectic_inverse(u.mat()), d.mat());
  CHECK(frob_diff(upd, -symplectic_inverse(upd)) <= 1e-10);
  CHECK(std::abs(d.mat().frobenius_norm() - 1.0) <= 1e-12);

  const StTangent h = rand_stiefel_tangent(rng, u, true);
  CHECK(matmul(symplectic_inverse(u.mat()), h.mat()).frobenius_norm() <=
        1e-10);
  CHECK(std::abs(h.mat().frobenius_norm() - 1.0) <= 1e-12);
}

}  // TEST_SUITE

#include <cmath>

#include "doctest.h"
#include "sympman/errors.hpp"
#include "sympman/linalg.hpp"
#include "sympman/matfun.hpp"
#include "sympman/random.hpp"
#include "sympman/sp_grassmann.hpp"
#include "sympman/sp_stiefel.hpp"
#include "sympman/symplectic.hpp"
#include "test_util.hpp"

using namespace sympman;
using testutil::frob_diff;
using testutil::rel_err;

namespace {

StPoint random_rep(Rng& rng, std::size_t n, std::size_t k) {
  return StPoint(rand_stiefel_point(rng, n, k, StiefelScale::cay_one));
}

// Random unit-norm pseudo-horizontal direction H = (I - UU^+)W.
Matrix random_horizontal(Rng& rng, const StPoint& u) {
  const Matrix w = rng.gaussian_matrix(u.mat().rows(), u.mat().cols());
  Matrix h = w - matmul(u.mat(), matmul(symplectic_inverse(u.mat()), w));
  h *= 1.0 / h.frobenius_norm();
  return h;
}

double trace(const Matrix& m) {
  double t = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

// Euclidean gradient of the representative-invariant subspace objective
// f(U) = ||S - UU^+S||_F^2, used where metric compatibility needs an
// invariant objective.
Matrix subspace_egrad(const Matrix& s, const StPoint& u) {
  const Matrix p = matmul(u.mat(), symplectic_inverse(u.mat()));
  const Matrix r = s - matmul(p, s);
  // -2 (R S^T J^T U J_k + J S R^T U J_k^T)
  const Matrix term1 = poisson_apply(
      Side::right, false,
      matmul(matmul_nt(r, s), poisson_apply(Side::left, true, u.mat())));
  const Matrix term2 = poisson_apply(
      Side::right, true,
      poisson_apply(Side::left, false, matmul(s, matmul_tn(r, u.mat()))));
  return (term1 + term2) * -2.0;
}

double subspace_objective(const Matrix& s, const Matrix& urep) {
  const Matrix p = matmul(urep, symplectic_inverse(urep));
  const double r = frob_diff(s, matmul(p, s));
  return r * r;
}

}  // namespace

TEST_SUITE("grassmann") {

TEST_CASE("projector of the canonical representative") {
  const GrPoint p(canonical_e(3, 1));
  const Matrix& proj = p.projector();
  // E E^+ keeps coordinates 1 and n+1.
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const double want = ((i == 0 && j == 0) || (i == 3 && j == 3)) ? 1.0
                                                                     : 0.0;
      CHECK(proj(i, j) == want);
    }
}

TEST_CASE("projector is representative independent with trace 2k") {
  Rng rng(131);
  const StPoint u = random_rep(rng, 8, 2);
  const Matrix n = rand_symplectic(rng, 2);
  const GrPoint p(u);
  const GrPoint q(StPoint(matmul(u.mat(), n)));
  CHECK(frob_diff(p.projector(), q.projector()) <= 1e-10);
  CHECK(std::abs(trace(p.projector()) - 4.0) <= 1e-10);

  // Idempotent and symplectically self-adjoint.
  const Matrix& pr = p.projector();
  CHECK(frob_diff(matmul(pr, pr), pr) <= 1e-10);
  CHECK(frob_diff(symplectic_inverse(pr), pr) <= 1e-10);
}

TEST_CASE("tangent_bracket tangency identity") {
  Rng rng(132);
  const GrPoint p(random_rep(rng, 8, 2));
  const Matrix& pr = p.projector();

  CHECK(tangent_bracket(p, Matrix(16, 16)).frobenius_norm() == 0.0);

  // A generator commuting with P has zero bracket.
  Matrix omega0 = rand_hamiltonian(rng, 8);
  const Matrix eye = Matrix::identity(16);
  const Matrix comm = matmul(matmul(pr, omega0), pr) +
                      matmul(matmul(eye - pr, omega0), eye - pr);
  CHECK(tangent_bracket(p, comm).frobenius_norm() <=
        1e-10 * comm.frobenius_norm());

  // Gamma = Gamma P + P Gamma - 2 P Gamma P for a genuine bracket.
  const Matrix gamma = tangent_bracket(p, rand_hamiltonian(rng, 8));
  const Matrix reassembled = matmul(gamma, pr) + matmul(pr, gamma) -
                             2.0 * matmul(pr, matmul(gamma, pr));
  CHECK(frob_diff(reassembled, gamma) <= 1e-10 * gamma.frobenius_norm());
}

TEST_CASE("hor_lift_pseudo lifts projector tangents") {
  Rng rng(133);
  const GrPoint p(random_rep(rng, 8, 2));
  const StPoint& u = p.rep();

  CHECK(hor_lift_pseudo(p, Matrix(16, 16)).h().frobenius_norm() == 0.0);

  const Matrix gamma = tangent_bracket(p, rand_hamiltonian(rng, 8));
  const GrTangentHor g = hor_lift_pseudo(p, gamma);
  CHECK(g.mode() == GrMode::pseudo);
  CHECK(matmul(symplectic_inverse(u.mat()), g.h()).frobenius_norm() <=
        1e-10 * gamma.frobenius_norm());

  // d rho of the lift reassembles Gamma.
  const Matrix drho = matmul(g.h(), symplectic_inverse(u.mat())) +
                      matmul(u.mat(), symplectic_inverse(g.h()));
  CHECK(frob_diff(drho, gamma) <= 1e-10 * gamma.frobenius_norm());

  // A matrix violating the tangency identity is rejected.
  CHECK_THROWS_AS(hor_lift_pseudo(p, rng.gaussian_matrix(16, 16)),
                  StructureError);
}

TEST_CASE("GrTangentHor mode gates") {
  Rng rng(134);
  const StPoint u = random_rep(rng, 6, 1);
  const Matrix h = random_horizontal(rng, u);
  CHECK_NOTHROW(GrTangentHor::pseudo(u, h));
  CHECK_NOTHROW(GrTangentHor::riem(u, h));
  // U itself has U^+U = I, which is not horizontal.
  CHECK_THROWS_AS(GrTangentHor::pseudo(u, u.mat()), StructureError);

  const GrTangentHor g = GrTangentHor::pseudo(u, h);
  const GrTangentHor s = GrTangentHor::scaled(g, -3.0);
  CHECK(frob_diff(s.h(), h * -3.0) == 0.0);
  CHECK(frob_diff(s.delta(), g.delta() * -3.0) == 0.0);
}

TEST_CASE("metric_h_gr agrees with its projector-level form") {
  Rng rng(135);
  const GrPoint p(random_rep(rng, 8, 2));
  const StPoint& u = p.rep();
  Matrix o1 = rand_hamiltonian(rng, 8);
  o1 *= 1.0 / o1.frobenius_norm();
  Matrix o2 = rand_hamiltonian(rng, 8);
  o2 *= 1.0 / o2.frobenius_norm();
  const Matrix g1 = tangent_bracket(p, o1);
  const Matrix g2 = tangent_bracket(p, o2);
  const GrTangentHor l1 = hor_lift_pseudo(p, g1);
  const GrTangentHor l2 = hor_lift_pseudo(p, g2);

  // tr(U^+ Gamma1^+ Gamma2 U) evaluated with the materialized brackets.
  const Matrix inner = matmul(symplectic_inverse(g1), matmul(g2, u.mat()));
  const double full = trace_product(symplectic_inverse(u.mat()), inner);
  CHECK(std::abs(metric_h_gr(l1, l2) - full) <= 1e-11);
  CHECK(std::abs(metric_h_gr(l1, l2) - metric_h_gr(l2, l1)) <= 1e-12);

  const GrTangentHor zero = GrTangentHor::pseudo(u, Matrix(16, 4));
  CHECK(metric_h_gr(zero, zero) == 0.0);
}

TEST_CASE("pseudo-Riemannian Grassmann geodesic: axioms and oracle") {
  Rng rng(136);
  const GrPoint p(random_rep(rng, 16, 2));
  const GrTangentHor g =
      GrTangentHor::pseudo(p.rep(), random_horizontal(rng, p.rep()));

  CHECK(projector_distance(exp_h_gr(p, g, 0.0), p) <= 1e-12);

  const Matrix gamma = matmul(g.h(), symplectic_inverse(p.rep().mat())) +
                       matmul(p.rep().mat(), symplectic_inverse(g.h()));
  for (double t : {0.3, 0.8}) {
    const Matrix oracle = exp_h_gr_projector(p, gamma, t);
    CHECK(frob_diff(exp_h_gr(p, g, t).projector(), oracle) <= 1e-8);
  }
}

TEST_CASE("pseudo-Riemannian Grassmann geodesic is representative independent") {
  Rng rng(137);
  const StPoint u = random_rep(rng, 10, 2);
  const Matrix n = rand_symplectic(rng, 2);
  const StPoint un = StPoint(matmul(u.mat(), n));
  const GrPoint p(u), pn(un);

  // The same subspace direction, lifted at each representative.
  const Matrix gamma =
      tangent_bracket(p, rand_hamiltonian(rng, 10));
  const GrTangentHor g = hor_lift_pseudo(p, gamma);
  const GrTangentHor gn = hor_lift_pseudo(pn, gamma);
  for (double t : {0.25, 1.0})
    CHECK(projector_distance(exp_h_gr(p, g, t), exp_h_gr(pn, gn, t)) <= 1e-9);
}

TEST_CASE("log_h_gr inverts the geodesic near the diagonal") {
  Rng rng(138);
  const GrPoint p(random_rep(rng, 10, 2));

  CHECK(log_h_gr(p, p).frobenius_norm() <= 1e-10);

  Matrix h = random_horizontal(rng, p.rep());
  const GrTangentHor g = GrTangentHor::pseudo(p.rep(), h);
  const GrPoint f = exp_h_gr(p, g, 0.3);

  // Exp(Log(F)) = F.
  const Matrix gamma = log_h_gr(p, f);
  const GrPoint back = exp_h_gr(p, hor_lift_pseudo(p, gamma), 1.0);
  CHECK(projector_distance(back, f) <= 1e-7);

  // Log(Exp(Gamma0)) = Gamma0 for a bracket-born direction.
  Matrix o = rand_hamiltonian(rng, 10);
  o *= 0.2 / o.frobenius_norm();
  const Matrix gamma0 = tangent_bracket(p, o);
  const GrPoint f2 = exp_h_gr(p, hor_lift_pseudo(p, gamma0), 1.0);
  CHECK(frob_diff(log_h_gr(p, f2), gamma0) <= 1e-7);
}

TEST_CASE("hor_riem_h_from_delta recovers the generator") {
  Rng rng(139);
  const StPoint u = random_rep(rng, 9, 2);

  const StTangent zero = tangent_from_ambient(u, Matrix(18, 4));
  CHECK(hor_riem_h_from_delta(u, zero).h().frobenius_norm() == 0.0);

  // Delta born riem-horizontal from a known H.
  const Matrix h = random_horizontal(rng, u);
  const GrTangentHor born = GrTangentHor::riem(u, h);
  const StTangent d = StTangent(u, born.delta());
  const GrTangentHor rec = hor_riem_h_from_delta(u, d);
  CHECK(frob_diff(rec.h(), h) <= 1e-9);
  CHECK(frob_diff(rec.delta(), d.mat()) <= 1e-9);
  CHECK(matmul(symplectic_inverse(u.mat()), rec.h()).frobenius_norm() <=
        1e-10);

  // A generic tangent with a vertical component is rejected.
  const StTangent generic = rand_stiefel_tangent(rng, u, false);
  CHECK_THROWS_AS(hor_riem_h_from_delta(u, generic), StructureError);
}

TEST_CASE("metric_g_gr two displayed forms agree and it is definite") {
  Rng rng(140);
  const StPoint u = random_rep(rng, 9, 2);
  const GrTangentHor g1 = GrTangentHor::riem(u, random_horizontal(rng, u));
  const GrTangentHor g2 = GrTangentHor::riem(u, random_horizontal(rng, u));

  // tr((U^T U)^{-1} Delta1^T (I - UU^+) Delta2).
  const Matrix gram = matmul_tn(u.mat(), u.mat());
  const Matrix d2proj =
      g2.delta() -
      matmul(u.mat(), matmul(symplectic_inverse(u.mat()), g2.delta()));
  const double form1 = trace(solve(gram, matmul_tn(g1.delta(), d2proj)));
  CHECK(rel_err(metric_g_gr(g1, g2), form1) <= 1e-10);

  CHECK(metric_g_gr(g1, g1) > 0.0);
  const GrTangentHor zero = GrTangentHor::riem(u, Matrix(18, 4));
  CHECK(metric_g_gr(zero, zero) == 0.0);
}

TEST_CASE("grad_g_gr metric compatibility for an invariant objective") {
  Rng rng(141);
  const std::size_t n = 8, k = 2;
  const StPoint u = random_rep(rng, n, k);
  const Matrix a = rand_stiefel_point(rng, n, k, StiefelScale::cay_one);
  Matrix s = matmul(a, symplectic_inverse(a));
  s += rng.gaussian_matrix(2 * n, 2 * n) * 0.1;

  CHECK(grad_g_gr(u, Matrix(2 * n, 2 * k)).h().frobenius_norm() == 0.0);

  const Matrix egrad = subspace_egrad(s, u);
  const GrTangentHor grad = grad_g_gr(u, egrad);
  CHECK(grad.mode() == GrMode::riem);
  for (int i = 0; i < 20; ++i) {
    const GrTangentHor d = GrTangentHor::riem(u, random_horizontal(rng, u));
    CHECK(rel_err(metric_g_gr(grad, d), dot(egrad, d.delta())) <= 1e-8);
  }
}

TEST_CASE("grad_g_gr matches finite differences along the Cayley curve") {
  Rng rng(142);
  const std::size_t n = 8, k = 2;
  const StPoint u = random_rep(rng, n, k);
  const Matrix a = rand_stiefel_point(rng, n, k, StiefelScale::cay_one);
  Matrix s = matmul(a, symplectic_inverse(a));
  s += rng.gaussian_matrix(2 * n, 2 * n) * 0.1;

  const GrTangentHor grad = grad_g_gr(u, subspace_egrad(s, u));
  const GrTangentHor d = GrTangentHor::riem(u, random_horizontal(rng, u));
  const CayleyCurveGr curve(d);  // the stepping path for riem-mode directions
  const double eps = 1e-5;
  const double slope = (subspace_objective(s, curve.at(eps).rep().mat()) -
                        subspace_objective(s, curve.at(-eps).rep().mat())) /
                       (2.0 * eps);
  CHECK(rel_err(slope, metric_g_gr(grad, d)) <= 1e-4);
}

TEST_CASE("Riemannian Grassmann geodesic: axioms and full-form oracle") {
  Rng rng(143);
  const StPoint u = random_rep(rng, 16, 2);
  const GrTangentHor g = GrTangentHor::riem(u, random_horizontal(rng, u));

  CHECK(projector_distance(exp_g_gr_reduced(u, g, 0.0), GrPoint(u)) <= 1e-12);

  // Initial velocity of the representative curve equals the ambient tangent.
  const double eps = 1e-5;
  const Matrix fd = (exp_g_gr_reduced(u, g, eps).rep().mat() -
                     exp_g_gr_reduced(u, g, -eps).rep().mat()) *
                    (0.5 / eps);
  CHECK(frob_diff(fd, g.delta()) <= 1e-6 * std::max(1.0, g.delta().frobenius_norm()));

  // The lifted geodesic is the horizontal Stiefel geodesic.
  const StTangent lift(u, g.delta());
  for (double t : {0.3, 0.9}) {
    const GrPoint full(exp_g_st_full(u, lift, t));
    CHECK(projector_distance(exp_g_gr_reduced(u, g, t), full) <= 1e-8);
  }
}

TEST_CASE("Grassmann Cayley retraction: axioms, oracle, invariance") {
  Rng rng(144);
  const StPoint u = random_rep(rng, 16, 2);
  const Matrix h = random_horizontal(rng, u);
  const GrTangentHor g = GrTangentHor::pseudo(u, h);
  const GrPoint p(u);

  CHECK(projector_distance(cayley_retract_gr(u, g, 0.0), p) <= 1e-12);

  const Matrix gamma = matmul(h, symplectic_inverse(u.mat())) +
                       matmul(u.mat(), symplectic_inverse(h));
  for (double t : {0.4, 1.0}) {
    const Matrix oracle = cayley_retract_gr_projector(p, gamma, t);
    CHECK(frob_diff(cayley_retract_gr(u, g, t).projector(), oracle) <= 1e-9);
  }

  // Representative independence.
  const Matrix nmat = rand_symplectic(rng, 2);
  const StPoint un = StPoint(matmul(u.mat(), nmat));
  const GrTangentHor gn = hor_lift_pseudo(GrPoint(un), gamma);
  CHECK(projector_distance(cayley_retract_gr(u, g, 0.7),
                           cayley_retract_gr(un, gn, 0.7)) <= 1e-9);
}

TEST_CASE("Cayley curve handles riem-mode directions via the pseudo lift") {
  Rng rng(145);
  const StPoint u = random_rep(rng, 10, 2);
  const GrTangentHor g = GrTangentHor::riem(u, random_horizontal(rng, u));

  // The one-shot retraction is a pseudo-mode contract.
  CHECK_THROWS_AS(cayley_retract_gr(u, g, 0.5), StructureError);

  // The curve converts internally; the subspace path matches the
  // projector-form oracle driven by d rho of the ambient tangent.
  const CayleyCurveGr curve(g);
  const Matrix gamma = matmul(g.delta(), symplectic_inverse(u.mat())) +
                       matmul(u.mat(), symplectic_inverse(g.delta()));
  const GrPoint p(u);
  for (double t : {0.3, 0.8}) {
    const Matrix oracle = cayley_retract_gr_projector(p, gamma, t);
    CHECK(frob_diff(curve.at(t).projector(), oracle) <= 1e-9);
  }
}

TEST_CASE("cayley_inverse_gr round-trips and cross-validates") {
  Rng rng(146);
  const StPoint u = random_rep(rng, 10, 2);
  const GrPoint p(u);

  CHECK(cayley_inverse_gr_proj(p, p).frobenius_norm() <= 1e-10);
  CHECK(cayley_inverse_gr_lifted(u, u).h().frobenius_norm() <= 1e-10);

  Matrix h = random_horizontal(rng, u);
  h *= 0.4;
  const GrTangentHor g = GrTangentHor::pseudo(u, h);
  const GrPoint f = cayley_retract_gr(u, g, 1.0);

  // Projector-form inverse.
  const Matrix gamma = cayley_inverse_gr_proj(p, f);
  const GrPoint back = cayley_retract_gr(u, hor_lift_pseudo(p, gamma), 1.0);
  CHECK(projector_distance(back, f) <= 1e-7);

  // Lifted inverse reaches the same subspace.
  const GrTangentHor l = cayley_inverse_gr_lifted(u, f.rep());
  const GrPoint back2 = cayley_retract_gr(u, l, 1.0);
  CHECK(projector_distance(back2, f) <= 1e-8);

  // The two inverses agree as horizontal lifts.
  CHECK(frob_diff(hor_lift_pseudo(p, gamma).h(), l.h()) <= 1e-7);
}

TEST_CASE("quotient invariance of all Grassmann curves") {
  Rng rng(147);
  const StPoint u = random_rep(rng, 8, 2);
  const Matrix nmat = rand_symplectic(rng, 2);
  const StPoint un = StPoint(matmul(u.mat(), nmat));
  const GrPoint p(u), pn(un);

  const Matrix gamma = tangent_bracket(p, rand_hamiltonian(rng, 8));
  const GrTangentHor g = hor_lift_pseudo(p, gamma);
  const GrTangentHor gn = hor_lift_pseudo(pn, gamma);

  // Riem-mode directions describing the same subspace motion.
  const GrTangentHor gr = GrTangentHor::riem(u, g.h());
  const GrTangentHor grn = GrTangentHor::riem(un, gn.h());

  for (double t : {0.25, 0.5, 1.0}) {
    CHECK(projector_distance(exp_h_gr(p, g, t), exp_h_gr(pn, gn, t)) <= 1e-8);
    CHECK(projector_distance(cayley_retract_gr(u, g, t),
                             cayley_retract_gr(un, gn, t)) <= 1e-8);
    CHECK(projector_distance(exp_g_gr_reduced(u, gr, t),
                             exp_g_gr_reduced(un, grn, t)) <= 1e-8);
  }
}

TEST_CASE("horizontal space dimension matches 4(n-k)k") {
  // At n = 4, k = 1 the constraint U^+H = 0 on vec(H) has full rank 2k x 2k,
  // leaving 4nk - 4k^2 = 4(n-k)k free parameters.
  Rng rng(148);
  const std::size_t n = 4, k = 1;
  const StPoint u = random_rep(rng, n, k);
  const Matrix up = symplectic_inverse(u.mat());  // 2k x 2n

  // Constraint matrix C: rows index entries of U^+H, columns index vec(H).
  const std::size_t rows = 2 * k * 2 * k, cols = 2 * n * 2 * k;
  Matrix c(rows, cols);
  for (std::size_t a = 0; a < 2 * k; ++a)
    for (std::size_t b = 0; b < 2 * k; ++b)
      for (std::size_t l = 0; l < 2 * n; ++l)
        c(a * 2 * k + b, l * 2 * k + b) = up(a, l);

  // Full row rank iff C C^T is positive definite.
  CHECK_NOTHROW(cholesky_factor(matmul_nt(c, c)));
  CHECK(cols - rows == 4 * (n - k) * k);
}

}  // TEST_SUITE

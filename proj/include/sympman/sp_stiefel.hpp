#pragma once

#include <cstddef>

#include "sympman/matrix.hpp"
#include "sympman/random.hpp"

namespace sympman {

// Point on the symplectic Stiefel manifold: U in R^{2n x 2k} with U^+U = I.
// Checked construction admits external data at a 1e-8 feasibility gate;
// curve evaluations use unchecked() because measuring their drift beyond
// that gate is part of the feasibility experiment.
class StPoint {
 public:
  explicit StPoint(Matrix u);
  static StPoint unchecked(Matrix u);

  const Matrix& mat() const { return mat_; }
  std::size_t n() const { return mat_.rows() / 2; }
  std::size_t k() const { return mat_.cols() / 2; }

 private:
  struct Unchecked {};
  StPoint(Unchecked, Matrix u) : mat_(std::move(u)) {}
  Matrix mat_;
};

// Tangent vector Delta at U, stored together with its split
// Delta = U A + H, A = U^+ Delta Hamiltonian, U^+ H = 0. Every reduced
// geodesic/retraction formula consumes exactly this split, so it is computed
// once at construction.
class StTangent {
 public:
  StTangent(StPoint base, Matrix delta);
  // Assembles Delta = U a + h from a split that is tangent by construction
  // (generators, inverse retractions); skips the tangency check.
  static StTangent from_split(StPoint base, Matrix a, Matrix h);
  // Same tangent scaled by s, with the cached split scaled consistently.
  static StTangent scaled(const StTangent& d, double s);

  const StPoint& base() const { return base_; }
  const Matrix& mat() const { return mat_; }
  const Matrix& a() const { return a_; }
  const Matrix& h() const { return h_; }

 private:
  StTangent(StPoint base, Matrix delta, Matrix a, Matrix h)
      : base_(std::move(base)),
        mat_(std::move(delta)),
        a_(std::move(a)),
        h_(std::move(h)) {}
  StPoint base_;
  Matrix mat_;
  Matrix a_;
  Matrix h_;
};

// Canonical point E with columns e_1..e_k, e_{n+1}..e_{n+k}.
StPoint canonical_e(std::size_t n, std::size_t k);

// Projection of an ambient matrix onto T_U: A = (U^+W - (U^+W)^+)/2,
// H = (I - UU^+)W. Identity on actual tangents.
StTangent tangent_from_ambient(const StPoint& u, const Matrix& w);

// Random unit-norm tangent U A + (I - UU^+)W; horizontal forces A = 0.
StTangent rand_stiefel_tangent(Rng& rng, const StPoint& u, bool horizontal);

// Hamiltonian Omega with Omega U = Delta, built from the rank-4k split
// [U A/2 + H, -U] [U^+; Delta^+(I - U U^+/2)].
Matrix omega_tilde(const StPoint& u, const StTangent& d);

// Hamiltonian lift for the Riemannian metric:
// Obar = Delta G^{-1} U^T + J U G^{-1} Delta^T (I - J^T U G^{-1} U^T J) J,
// G = U^T U; satisfies Obar U = Delta.
Matrix omega_bar(const StPoint& u, const StTangent& d);

// Pseudo-Riemannian metric tr(Delta1^+ (I - U U^+/2) Delta2); indefinite.
double metric_h_st(const StTangent& d1, const StTangent& d2);

// Riemannian metric tr(Delta1^T (I - J^T U G^{-1} U^T J / 2) Delta2 G^{-1}).
double metric_g_st(const StTangent& d1, const StTangent& d2);

// Riemannian gradient egrad U^T U + J U egrad^T J U; validated tangent.
StTangent grad_g_st(const StPoint& u, const Matrix& egrad);

// Curve objects: the constructor does all (U, Delta)-dependent work once so
// that line-search trials at several t only pay the small t-dependent
// exponentials/solves.

// Pseudo-Riemannian geodesic, reduced form:
// [U, U A/2 + H] expm(t [[A/2, A^2/4 - H^+H], [I, A/2]]) [I; 0].
class PseudoGeodesicSt {
 public:
  explicit PseudoGeodesicSt(const StTangent& d);
  StPoint at(double t) const;

 private:
  Matrix f_;      // [U, U A/2 + H]
  Matrix block_;  // the 4k x 4k exponent at t = 1
};

// Riemannian geodesic, reduced form: one 8k x 8k and one 4k x 4k expm.
class RiemannianGeodesicSt {
 public:
  explicit RiemannianGeodesicSt(const StTangent& d);
  StPoint at(double t) const;

 private:
  Matrix xhat_;  // 2n x 8k
  Matrix yhx_;   // Yhat^T Xhat, 8k x 8k
  Matrix yx_;    // Y^T X, 4k x 4k
};

// Cayley retraction -U + (tH + 2U) (t^2/4 H^+H - t/2 A + I)^{-1}.
class CayleyCurveSt {
 public:
  explicit CayleyCurveSt(const StTangent& d);
  // Throws SingularMatrixError when the 2k x 2k system is singular.
  StPoint at(double t) const;

 private:
  Matrix u_;
  Matrix a_;
  Matrix h_;
  Matrix hph_;  // H^+H
};

// Quasi-geodesic retraction
// [U, tDelta] expm([[tA, -t^2 Delta^+Delta], [I, tA]]) [I; 0] expm(-tA).
class QuasiGeodesicSt {
 public:
  explicit QuasiGeodesicSt(const StTangent& d);
  StPoint at(double t) const;

 private:
  Matrix u_;
  Matrix d_;
  Matrix a_;
  Matrix dpd_;  // Delta^+Delta
};

// One-shot wrappers over the curve objects. The *_full variants evaluate the
// 2n x 2n forms and exist as oracles for tests.
StPoint exp_h_st_reduced(const StPoint& u, const StTangent& d, double t);
StPoint exp_h_st_full(const StPoint& u, const StTangent& d, double t);
StPoint exp_g_st_reduced(const StPoint& u, const StTangent& d, double t);
StPoint exp_g_st_full(const StPoint& u, const StTangent& d, double t);
StPoint cayley_retract(const StPoint& u, const StTangent& d, double t);
StPoint cayley_retract_full(const StPoint& u, const StTangent& d, double t);
StPoint quasi_geodesic_retract(const StPoint& u, const StTangent& d, double t);

// Closed-form inverse of the Cayley retraction at t = 1:
// A = 2((I + V^+U)^{-1} - (I + U^+V)^{-1}), H = 2((V+U)(I + U^+V)^{-1} - U).
StTangent cayley_inverse(const StPoint& u, const StPoint& v);

}  // namespace sympman

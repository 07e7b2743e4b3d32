#pragma once

#include <cstddef>
#include <optional>

#include "sympman/matrix.hpp"
#include "sympman/sp_stiefel.hpp"

namespace sympman {

// Point of the symplectic Grassmann manifold, stored as a lifted Stiefel
// representative U. The projector P = U U^+ is materialized lazily and only
// for oracles/tests; all reduced formulas work on the 2n x 2k data. First
// materialization is single-writer; afterwards the value is immutable.
class GrPoint {
 public:
  explicit GrPoint(StPoint rep) : rep_(std::move(rep)) {}

  const StPoint& rep() const { return rep_; }
  // P = U U^+, validated as a rank-2k symplectic projector on first use.
  const Matrix& projector() const;

 private:
  StPoint rep_;
  mutable std::optional<Matrix> proj_;
};

enum class GrMode { pseudo, riem };

// Horizontal tangent on a representative. In pseudo mode the ambient tangent
// is H itself (U^+H = 0); in riem mode H encodes Delta = (U H^+ - H U^+)^T U,
// cached at construction.
class GrTangentHor {
 public:
  static GrTangentHor pseudo(StPoint base, Matrix h);
  static GrTangentHor riem(StPoint base, Matrix h);
  static GrTangentHor scaled(const GrTangentHor& g, double s);

  GrMode mode() const { return mode_; }
  const StPoint& rep() const { return base_; }
  const Matrix& h() const { return h_; }
  // Ambient tangent at the representative (mode-dependent).
  const Matrix& delta() const { return delta_; }

 private:
  GrTangentHor(StPoint base, GrMode mode, Matrix h, Matrix delta)
      : base_(std::move(base)),
        mode_(mode),
        h_(std::move(h)),
        delta_(std::move(delta)) {}
  // Builds the pseudo-mode lift of a riem-mode tangent; exact by
  // construction, so it may use the unchecked constructor.
  friend GrTangentHor pseudo_from_riem(const GrTangentHor& g);
  StPoint base_;
  GrMode mode_;
  Matrix h_;
  Matrix delta_;
};

// Gamma = Omega P - P Omega, the ambient tangent at the projector P.
Matrix tangent_bracket(const GrPoint& p, const Matrix& omega);

// Horizontal lift Gamma U of a projector tangent; pseudo mode.
GrTangentHor hor_lift_pseudo(const GrPoint& p, const Matrix& gamma);

// Extraction of H from a Riemannian-horizontal Stiefel tangent:
// H = (I - UU^+) J^T Delta (U^T U)^{-1} J_{2k}; validates that Delta
// reconstructs from H.
GrTangentHor hor_riem_h_from_delta(const StPoint& u, const StTangent& d);

// Pseudo-horizontal lift of the subspace direction carried by a riem-mode
// tangent: H = Delta + U (Delta^+ U). Used to drive the Cayley retraction
// from Riemannian gradients.
GrTangentHor pseudo_from_riem(const GrTangentHor& g);

// Pseudo-Riemannian metric tr(H1^+ H2) on lifts; indefinite.
double metric_h_gr(const GrTangentHor& g1, const GrTangentHor& g2);

// Riemannian metric tr(U^T U (H2^T H1)^+ - (U^T H1)^+ H2^T U).
double metric_g_gr(const GrTangentHor& g1, const GrTangentHor& g2);

// Riemannian gradient on representatives: H = (I - UU^+) J^T egrad J_{2k},
// returned in riem mode. Valid for representative-invariant objectives.
GrTangentHor grad_g_gr(const StPoint& u, const Matrix& egrad);

// Pseudo-Riemannian geodesic through the lifted representative:
// U(t) = [-H, U] expm(t [[0, -I], [H^+H, 0]]) [0; I].
class PseudoGeodesicGr {
 public:
  explicit PseudoGeodesicGr(const GrTangentHor& g);
  GrPoint at(double t) const;

 private:
  Matrix f_;      // [-H, U]
  Matrix block_;  // 4k x 4k exponent at t = 1
};

// Riemannian geodesic, reduced: one 8k x 8k and one 4k x 4k expm.
class RiemannianGeodesicGr {
 public:
  explicit RiemannianGeodesicGr(const GrTangentHor& g);
  GrPoint at(double t) const;

 private:
  Matrix x_;    // 2n x 8k
  Matrix yx_;   // Y^T X, 8k x 8k
  Matrix k2_;   // [[0, -H^+H], [I, 0]], 4k x 4k
};

// Cayley retraction on the horizontal lift: Theta = I + t^2/4 H^+H.
class CayleyCurveGr {
 public:
  explicit CayleyCurveGr(const GrTangentHor& g);
  GrPoint at(double t) const;

 private:
  Matrix u_;
  Matrix h_;
  Matrix hph_;
};

GrPoint exp_h_gr(const GrPoint& p, const GrTangentHor& g, double t);
GrPoint exp_g_gr_reduced(const StPoint& u, const GrTangentHor& g, double t);
GrPoint cayley_retract_gr(const StPoint& u, const GrTangentHor& g, double t);

// Projector-form oracles (2n x 2n work; for tests at small n).
Matrix exp_h_gr_projector(const GrPoint& p, const Matrix& gamma, double t);
Matrix cayley_retract_gr_projector(const GrPoint& p, const Matrix& gamma,
                                   double t);

// Geodesic endpoint map: Gamma = [Omega, P] with
// Omega = logm((I - 2F)(I - 2P)) / 2; exp_h_gr(p, lift(Gamma), 1) = f.
Matrix log_h_gr(const GrPoint& p, const GrPoint& f);

// Inverse Cayley retraction, projector form:
// Omega = 2 cay^{-1}(sqrtm((I - 2F)(I - 2P))), returns Gamma = [Omega, P].
Matrix cayley_inverse_gr_proj(const GrPoint& p, const GrPoint& f);

// Inverse Cayley retraction on representatives:
// N = (U^+V)^{-1} sqrtm(U^+V V^+U), H = 2(VN + U)(U^+VN + I)^{-1} - 2U.
GrTangentHor cayley_inverse_gr_lifted(const StPoint& u, const StPoint& v);

// Frobenius distance of the materialized projectors (test plumbing).
double projector_distance(const GrPoint& p, const GrPoint& q);

}  // namespace sympman

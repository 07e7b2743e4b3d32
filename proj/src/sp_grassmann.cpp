#include "sympman/sp_grassmann.hpp"

#include <algorithm>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/linalg.hpp"
#include "sympman/matfun.hpp"
#include "sympman/symplectic.hpp"

namespace sympman {

namespace {

Matrix jlt(const Matrix& m) { return poisson_apply(Side::left, true, m); }
Matrix jr(const Matrix& m) { return poisson_apply(Side::right, false, m); }

void require_same_rep(const GrTangentHor& g1, const GrTangentHor& g2) {
  if (!g1.rep().mat().identical_to(g2.rep().mat()))
    throw StructureError("Grassmann tangents have different base points");
  if (g1.mode() != g2.mode())
    throw StructureError("Grassmann tangents have different modes");
}

void require_based_at(const StPoint& u, const GrTangentHor& g) {
  if (!g.rep().mat().identical_to(u.mat()))
    throw StructureError("tangent is not based at the given representative");
}

// Delta = (U H^+ - H U^+)^T U evaluated through 2n x 2k products:
// J^T H J_{2k} U^T U - J^T U J_{2k} H^T U.
Matrix delta_from_riem_h(const Matrix& um, const Matrix& h) {
  return jr(jlt(h)) * matmul_tn(um, um) - jr(jlt(um)) * matmul_tn(h, um);
}

void require_horizontal(const Matrix& um, const Matrix& h) {
  const double res = (symplectic_inverse(um) * h).frobenius_norm();
  if (!(res <= 1e-8 * std::max(1.0, h.frobenius_norm())))
    throw StructureError("lift is not horizontal: U^+H != 0");
}

}  // namespace

const Matrix& GrPoint::projector() const {
  if (!proj_) {
    Matrix p = rep_.mat() * symplectic_inverse(rep_.mat());
    if (!((p * p - p).frobenius_norm() <= 1e-8) ||
        !((symplectic_inverse(p) - p).frobenius_norm() <= 1e-8))
      throw StructureError("representative does not define a symplectic projector");
    proj_ = std::move(p);
  }
  return *proj_;
}

GrTangentHor GrTangentHor::pseudo(StPoint base, Matrix h) {
  if (!h.same_shape(base.mat()))
    throw DimensionError("GrTangentHor: lift shape must match base");
  require_horizontal(base.mat(), h);
  Matrix delta = h;
  return GrTangentHor(std::move(base), GrMode::pseudo, std::move(h),
                      std::move(delta));
}

GrTangentHor GrTangentHor::riem(StPoint base, Matrix h) {
  if (!h.same_shape(base.mat()))
    throw DimensionError("GrTangentHor: lift shape must match base");
  require_horizontal(base.mat(), h);
  Matrix delta = delta_from_riem_h(base.mat(), h);
  return GrTangentHor(std::move(base), GrMode::riem, std::move(h),
                      std::move(delta));
}

GrTangentHor GrTangentHor::scaled(const GrTangentHor& g, double s) {
  return GrTangentHor(g.base_, g.mode_, s * g.h_, s * g.delta_);
}

Matrix tangent_bracket(const GrPoint& p, const Matrix& omega) {
  const Matrix& proj = p.projector();
  if (!omega.same_shape(proj))
    throw DimensionError("tangent_bracket: shape mismatch");
  return omega * proj - proj * omega;
}

GrTangentHor hor_lift_pseudo(const GrPoint& p, const Matrix& gamma) {
  const Matrix& proj = p.projector();
  if (!gamma.same_shape(proj))
    throw DimensionError("hor_lift_pseudo: shape mismatch");
  const Matrix gp = gamma * proj;
  const Matrix pg = proj * gamma;
  const Matrix res = gamma - (gp + pg - 2.0 * (proj * gp));
  if (!(res.frobenius_norm() <= 1e-8 * std::max(1.0, gamma.frobenius_norm())))
    throw StructureError("matrix is not tangent at the projector");
  return GrTangentHor::pseudo(p.rep(), gamma * p.rep().mat());
}

GrTangentHor hor_riem_h_from_delta(const StPoint& u, const StTangent& d) {
  if (!d.base().mat().identical_to(u.mat()))
    throw StructureError("tangent is not based at the given point");
  const Matrix& um = u.mat();
  const Matrix g = matmul_tn(um, um);
  const Matrix chol = cholesky_factor(g);
  const Matrix w =
      jr(cholesky_solve(chol, jlt(d.mat()).transposed()).transposed());
  Matrix h = w - um * (symplectic_inverse(um) * w);
  const Matrix rec = delta_from_riem_h(um, h);
  if (!((rec - d.mat()).frobenius_norm() <= 1e-6 * d.mat().frobenius_norm()))
    throw StructureError("tangent is not horizontal for the Riemannian metric");
  return GrTangentHor::riem(u, std::move(h));
}

GrTangentHor pseudo_from_riem(const GrTangentHor& g) {
  const Matrix& um = g.rep().mat();
  const Matrix& delta = g.delta();
  Matrix h = delta + um * (symplectic_inverse(delta) * um);
  Matrix copy = h;
  return GrTangentHor(g.rep(), GrMode::pseudo, std::move(h), std::move(copy));
}

double metric_h_gr(const GrTangentHor& g1, const GrTangentHor& g2) {
  require_same_rep(g1, g2);
  return trace_product(symplectic_inverse(g1.h()), g2.h());
}

double metric_g_gr(const GrTangentHor& g1, const GrTangentHor& g2) {
  require_same_rep(g1, g2);
  const Matrix& um = g1.rep().mat();
  const Matrix g = matmul_tn(um, um);
  return trace_product(g, symplectic_inverse(matmul_tn(g2.h(), g1.h()))) -
         trace_product(symplectic_inverse(matmul_tn(um, g1.h())),
                       matmul_tn(g2.h(), um));
}

GrTangentHor grad_g_gr(const StPoint& u, const Matrix& egrad) {
  if (!egrad.same_shape(u.mat()))
    throw DimensionError("grad_g_gr: gradient shape must match base");
  const Matrix w = jr(jlt(egrad));
  Matrix h = w - u.mat() * (symplectic_inverse(u.mat()) * w);
  return GrTangentHor::riem(u, std::move(h));
}

PseudoGeodesicGr::PseudoGeodesicGr(const GrTangentHor& g) {
  if (g.mode() != GrMode::pseudo)
    throw StructureError("pseudo-Riemannian geodesic needs a pseudo-mode lift");
  const Matrix& um = g.rep().mat();
  const std::size_t kk = um.cols();
  f_ = hcat(-g.h(), um);
  block_ = Matrix(2 * kk, 2 * kk);
  block_.set_block(0, kk, -Matrix::identity(kk));
  block_.set_block(kk, 0, symplectic_inverse(g.h()) * g.h());
}

GrPoint PseudoGeodesicGr::at(double t) const {
  const std::size_t kk = f_.cols() / 2;
  return GrPoint(
      StPoint::unchecked(f_ * expm(t * block_).block(0, kk, 2 * kk, kk)));
}

RiemannianGeodesicGr::RiemannianGeodesicGr(const GrTangentHor& g) {
  if (g.mode() != GrMode::riem)
    throw StructureError("Riemannian geodesic needs a riem-mode lift");
  const Matrix& um = g.rep().mat();
  const std::size_t kk = um.cols();
  const Matrix jhj = jr(jlt(g.h()));
  const Matrix juj = jr(jlt(um));
  x_ = hcat(hcat(jhj, -juj), hcat(-um, g.h()));
  yx_ = matmul_tn(hcat(hcat(um, g.h()), hcat(jhj, juj)), x_);
  const Matrix hph = symplectic_inverse(g.h()) * g.h();
  k2_ = Matrix(2 * kk, 2 * kk);
  k2_.set_block(0, kk, -hph);
  k2_.set_block(kk, 0, Matrix::identity(kk));
}

GrPoint RiemannianGeodesicGr::at(double t) const {
  const std::size_t kk = x_.cols() / 4;
  const Matrix e1 = expm(t * yx_).block(0, 2 * kk, 4 * kk, 2 * kk);
  const Matrix e2 = expm(t * k2_).block(0, 0, 2 * kk, kk);
  return GrPoint(StPoint::unchecked(-(x_ * e1) * e2));
}

CayleyCurveGr::CayleyCurveGr(const GrTangentHor& g)
    : u_(g.rep().mat()),
      h_(g.mode() == GrMode::pseudo ? g.h() : pseudo_from_riem(g).h()),
      hph_(symplectic_inverse(h_) * h_) {}

GrPoint CayleyCurveGr::at(double t) const {
  Matrix theta = (t * t / 4.0) * hph_;
  for (std::size_t i = 0; i < theta.rows(); ++i) theta(i, i) += 1.0;
  return GrPoint(
      StPoint::unchecked(right_solve(t * h_ + 2.0 * u_, theta) - u_));
}

GrPoint exp_h_gr(const GrPoint& p, const GrTangentHor& g, double t) {
  require_based_at(p.rep(), g);
  return PseudoGeodesicGr(g).at(t);
}

GrPoint exp_g_gr_reduced(const StPoint& u, const GrTangentHor& g, double t) {
  require_based_at(u, g);
  return RiemannianGeodesicGr(g).at(t);
}

GrPoint cayley_retract_gr(const StPoint& u, const GrTangentHor& g, double t) {
  require_based_at(u, g);
  if (g.mode() != GrMode::pseudo)
    throw StructureError("cayley_retract_gr needs a pseudo-mode lift");
  return CayleyCurveGr(g).at(t);
}

Matrix exp_h_gr_projector(const GrPoint& p, const Matrix& gamma, double t) {
  const Matrix& proj = p.projector();
  const Matrix brk = gamma * proj - proj * gamma;
  const Matrix e = expm(t * brk);
  return e * proj * expm(-t * brk);
}

Matrix cayley_retract_gr_projector(const GrPoint& p, const Matrix& gamma,
                                   double t) {
  const Matrix& proj = p.projector();
  const Matrix brk = gamma * proj - proj * gamma;
  const Matrix c = cay((0.5 * t) * brk);
  return right_solve(c * proj, c);
}

namespace {

// (I - 2F)(I - 2P) from materialized projectors.
Matrix reflector_product(const GrPoint& p, const GrPoint& f) {
  Matrix a = f.projector() * p.projector() * 4.0;
  a -= 2.0 * p.projector();
  a -= 2.0 * f.projector();
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += 1.0;
  return a;
}

void require_sp_p_membership(const Matrix& omega, const Matrix& proj) {
  const double on = omega.frobenius_norm();
  if (on <= 1e-12) return;  // coincident subspaces: nothing to violate
  const Matrix res = omega - (omega * proj + proj * omega);
  if (!(res.frobenius_norm() <= 1e-6 * on))
    throw StructureError(
        "endpoint outside the chart: log/inverse hypothesis violated");
}

}  // namespace

Matrix log_h_gr(const GrPoint& p, const GrPoint& f) {
  Matrix omega;
  try {
    omega = 0.5 * logm(reflector_product(p, f));
  } catch (const ConvergenceError&) {
    throw DomainError("log_h_gr: subspaces outside the injectivity domain");
  }
  require_sp_p_membership(omega, p.projector());
  return omega * p.projector() - p.projector() * omega;
}

Matrix cayley_inverse_gr_proj(const GrPoint& p, const GrPoint& f) {
  Matrix omega;
  try {
    omega = 2.0 * cay_inv(sqrtm(reflector_product(p, f)));
  } catch (const SingularMatrixError&) {
    throw DomainError("cayley_inverse_gr_proj: subspaces outside the chart");
  } catch (const ConvergenceError&) {
    throw DomainError("cayley_inverse_gr_proj: subspaces outside the chart");
  }
  require_sp_p_membership(omega, p.projector());
  return omega * p.projector() - p.projector() * omega;
}

GrTangentHor cayley_inverse_gr_lifted(const StPoint& u, const StPoint& v) {
  if (!u.mat().same_shape(v.mat()))
    throw DimensionError("cayley_inverse_gr_lifted: shape mismatch");
  const std::size_t kk = u.mat().cols();
  const Matrix uv = symplectic_inverse(u.mat()) * v.mat();
  try {
    const Matrix n = solve(uv, sqrtm(uv * (symplectic_inverse(v.mat()) * u.mat())));
    Matrix nres = symplectic_inverse(n) * n;
    for (std::size_t i = 0; i < kk; ++i) nres(i, i) -= 1.0;
    if (!(nres.frobenius_norm() <= 1e-8))
      throw StructureError("cayley_inverse_gr_lifted: N is not symplectic");
    const Matrix vn = v.mat() * n;
    Matrix m = uv * n;
    for (std::size_t i = 0; i < kk; ++i) m(i, i) += 1.0;
    Matrix h = 2.0 * right_solve(vn + u.mat(), m) - 2.0 * u.mat();
    return GrTangentHor::pseudo(u, std::move(h));
  } catch (const SingularMatrixError&) {
    throw DomainError("cayley_inverse_gr_lifted: subspaces outside the chart");
  } catch (const ConvergenceError&) {
    throw DomainError("cayley_inverse_gr_lifted: subspaces outside the chart");
  }
}

double projector_distance(const GrPoint& p, const GrPoint& q) {
  return (p.projector() - q.projector()).frobenius_norm();
}

}  // namespace sympman

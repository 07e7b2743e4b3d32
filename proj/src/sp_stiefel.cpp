#include "sympman/sp_stiefel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/linalg.hpp"
#include "sympman/matfun.hpp"
#include "sympman/symplectic.hpp"

namespace sympman {

namespace {

Matrix jl(const Matrix& m) { return poisson_apply(Side::left, false, m); }
Matrix jlt(const Matrix& m) { return poisson_apply(Side::left, true, m); }
Matrix jr(const Matrix& m) { return poisson_apply(Side::right, false, m); }

void require_based_at(const StPoint& u, const StTangent& d) {
  if (!d.base().mat().identical_to(u.mat()))
    throw StructureError("tangent is not based at the given point");
}

void require_same_base(const StTangent& d1, const StTangent& d2) {
  if (!d1.base().mat().identical_to(d2.base().mat()))
    throw StructureError("tangents have different base points");
}

}  // namespace

StPoint::StPoint(Matrix u) : mat_(std::move(u)) {
  if (mat_.rows() % 2 != 0 || mat_.cols() % 2 != 0 || mat_.empty() ||
      mat_.cols() > mat_.rows())
    throw DimensionError("StPoint: need a 2n x 2k matrix with k <= n");
  const double res = symplectic_feasibility(mat_);
  if (!(res <= 1e-8))
    throw StructureError("matrix is not on the manifold: ||U^+U - I|| = " +
                         std::to_string(res));
}

StPoint StPoint::unchecked(Matrix u) { return StPoint(Unchecked{}, std::move(u)); }

StTangent::StTangent(StPoint base, Matrix delta)
    : base_(std::move(base)), mat_(std::move(delta)) {
  if (!mat_.same_shape(base_.mat()))
    throw DimensionError("StTangent: tangent shape must match base");
  const Matrix up = symplectic_inverse(base_.mat());
  a_ = up * mat_;
  const double tol = 1e-8 * std::max(1.0, mat_.frobenius_norm());
  if (!(hamiltonian_residual(a_) <= tol))
    throw StructureError("matrix is not tangent: U^+Delta not Hamiltonian");
  h_ = mat_ - base_.mat() * a_;
  if (!((up * h_).frobenius_norm() <= tol))
    throw StructureError("matrix is not tangent: normal component present");
}

StTangent StTangent::from_split(StPoint base, Matrix a, Matrix h) {
  Matrix delta = base.mat() * a + h;
  return StTangent(std::move(base), std::move(delta), std::move(a),
                   std::move(h));
}

StTangent StTangent::scaled(const StTangent& d, double s) {
  return StTangent(d.base_, s * d.mat_, s * d.a_, s * d.h_);
}

StPoint canonical_e(std::size_t n, std::size_t k) {
  return StPoint(canonical_basis(n, k));
}

StTangent tangent_from_ambient(const StPoint& u, const Matrix& w) {
  if (!w.same_shape(u.mat()))
    throw DimensionError("tangent_from_ambient: shape mismatch");
  const Matrix upw = symplectic_inverse(u.mat()) * w;
  Matrix a = 0.5 * (upw - symplectic_inverse(upw));
  Matrix h = w - u.mat() * upw;
  return StTangent::from_split(u, std::move(a), std::move(h));
}

StTangent rand_stiefel_tangent(Rng& rng, const StPoint& u, bool horizontal) {
  const std::size_t k = u.k();
  Matrix a = rand_hamiltonian(rng, k);
  const Matrix w = rng.gaussian_matrix(2 * u.n(), 2 * k);
  if (horizontal) a = Matrix(2 * k, 2 * k);
  Matrix h = w - u.mat() * (symplectic_inverse(u.mat()) * w);
  StTangent d = StTangent::from_split(u, std::move(a), std::move(h));
  return StTangent::scaled(d, 1.0 / d.mat().frobenius_norm());
}

Matrix omega_tilde(const StPoint& u, const StTangent& d) {
  require_based_at(u, d);
  const Matrix up = symplectic_inverse(u.mat());
  const Matrix dp = symplectic_inverse(d.mat());
  const Matrix xf = hcat(0.5 * (u.mat() * d.a()) + d.h(), -u.mat());
  const Matrix yt = vcat(up, dp - 0.5 * ((dp * u.mat()) * up));
  return xf * yt;
}

Matrix omega_bar(const StPoint& u, const StTangent& d) {
  require_based_at(u, d);
  const Matrix& um = u.mat();
  const Matrix g = matmul_tn(um, um);
  const Matrix chol = cholesky_factor(g);
  const Matrix ugi = cholesky_solve(chol, um.transposed()).transposed();
  const Matrix dgi = cholesky_solve(chol, d.mat().transposed()).transposed();
  const Matrix jtu = jlt(um);
  const Matrix k = jr(d.mat().transposed()) +
                   matmul_tn(d.mat(), jtu) * cholesky_solve(chol, um.transposed());
  return matmul_nt(dgi, um) + jl(ugi) * k;
}

double metric_h_st(const StTangent& d1, const StTangent& d2) {
  require_same_base(d1, d2);
  const Matrix t = d2.mat() - 0.5 * (d1.base().mat() * d2.a());
  return trace_product(symplectic_inverse(d1.mat()), t);
}

double metric_g_st(const StTangent& d1, const StTangent& d2) {
  require_same_base(d1, d2);
  const Matrix& um = d1.base().mat();
  const Matrix g = matmul_tn(um, um);
  const Matrix chol = cholesky_factor(g);
  const Matrix t2 = cholesky_solve(chol, d2.mat().transposed()).transposed();
  const Matrix jtu = jlt(um);
  const Matrix c1 = matmul_tn(d1.mat(), jtu);
  const Matrix c2 = matmul_tn(jtu, t2);
  return dot(d1.mat(), t2) -
         0.5 * trace_product(c1, cholesky_solve(chol, c2));
}

StTangent grad_g_st(const StPoint& u, const Matrix& egrad) {
  if (!egrad.same_shape(u.mat()))
    throw DimensionError("grad_g_st: gradient shape must match base");
  const Matrix g = matmul_tn(u.mat(), u.mat());
  const Matrix ju = jl(u.mat());
  return StTangent(u, egrad * g + ju * matmul_tn(egrad, ju));
}

PseudoGeodesicSt::PseudoGeodesicSt(const StTangent& d) {
  const Matrix& um = d.base().mat();
  const std::size_t kk = um.cols();
  f_ = hcat(um, 0.5 * (um * d.a()) + d.h());
  block_ = Matrix(2 * kk, 2 * kk);
  block_.set_block(0, 0, 0.5 * d.a());
  block_.set_block(0, kk,
                   0.25 * (d.a() * d.a()) - symplectic_inverse(d.h()) * d.h());
  block_.set_block(kk, 0, Matrix::identity(kk));
  block_.set_block(kk, kk, 0.5 * d.a());
}

StPoint PseudoGeodesicSt::at(double t) const {
  const std::size_t kk = f_.cols() / 2;
  return StPoint::unchecked(f_ * expm(t * block_).block(0, 0, 2 * kk, kk));
}

RiemannianGeodesicSt::RiemannianGeodesicSt(const StTangent& d) {
  const Matrix& um = d.base().mat();
  const std::size_t kk = um.cols();
  const Matrix g = matmul_tn(um, um);
  const Matrix chol = cholesky_factor(g);
  const Matrix gi = cholesky_solve(chol, Matrix::identity(kk));
  const Matrix up = symplectic_inverse(um);
  const Matrix jtu = jlt(um);

  const Matrix abar = jl(jr(matmul_tn(um, d.mat()) * gi)) +
                      gi * matmul_tn(d.mat(), um) -
                      jr(gi * (matmul_tn(d.mat(), jtu) * gi));
  const Matrix w = jr(jl(d.mat()) * gi);
  const Matrix hbar = w - um * (up * w);
  const Matrix dbar = um * abar + hbar;

  const Matrix x = hcat(dbar - 0.5 * (um * (up * dbar)), -um);
  const Matrix dbp = symplectic_inverse(dbar);
  const Matrix y = hcat(jr(jtu), (dbp - 0.5 * ((dbp * um) * up)).transposed());
  xhat_ = hcat(y, -x);
  yhx_ = matmul_tn(hcat(x, y), xhat_);
  yx_ = matmul_tn(y, x);
}

StPoint RiemannianGeodesicSt::at(double t) const {
  const std::size_t kk = xhat_.cols() / 4;
  const Matrix e1 = expm(t * yhx_).block(0, 2 * kk, 4 * kk, 2 * kk);
  const Matrix e2 = expm(t * yx_).block(0, kk, 2 * kk, kk);
  return StPoint::unchecked(xhat_ * e1 * e2);
}

CayleyCurveSt::CayleyCurveSt(const StTangent& d)
    : u_(d.base().mat()),
      a_(d.a()),
      h_(d.h()),
      hph_(symplectic_inverse(d.h()) * d.h()) {}

StPoint CayleyCurveSt::at(double t) const {
  Matrix theta = (t * t / 4.0) * hph_ - (t / 2.0) * a_;
  for (std::size_t i = 0; i < theta.rows(); ++i) theta(i, i) += 1.0;
  return StPoint::unchecked(right_solve(t * h_ + 2.0 * u_, theta) - u_);
}

QuasiGeodesicSt::QuasiGeodesicSt(const StTangent& d)
    : u_(d.base().mat()),
      d_(d.mat()),
      a_(d.a()),
      dpd_(symplectic_inverse(d.mat()) * d.mat()) {}

StPoint QuasiGeodesicSt::at(double t) const {
  const std::size_t kk = u_.cols();
  Matrix block(2 * kk, 2 * kk);
  block.set_block(0, 0, t * a_);
  block.set_block(0, kk, (-t * t) * dpd_);
  block.set_block(kk, 0, Matrix::identity(kk));
  block.set_block(kk, kk, t * a_);
  const Matrix w = expm(block).block(0, 0, 2 * kk, kk);
  const Matrix top = w.block(0, 0, kk, kk);
  const Matrix bot = w.block(kk, 0, kk, kk);
  return StPoint::unchecked((u_ * top + t * (d_ * bot)) * expm(-t * a_));
}

StPoint exp_h_st_reduced(const StPoint& u, const StTangent& d, double t) {
  require_based_at(u, d);
  return PseudoGeodesicSt(d).at(t);
}

StPoint exp_h_st_full(const StPoint& u, const StTangent& d, double t) {
  return StPoint::unchecked(expm(t * omega_tilde(u, d)) * u.mat());
}

StPoint exp_g_st_reduced(const StPoint& u, const StTangent& d, double t) {
  require_based_at(u, d);
  return RiemannianGeodesicSt(d).at(t);
}

StPoint exp_g_st_full(const StPoint& u, const StTangent& d, double t) {
  const Matrix ob = omega_bar(u, d);
  const Matrix obt = ob.transposed();
  return StPoint::unchecked(expm(t * (ob - obt)) * (expm(t * obt) * u.mat()));
}

StPoint cayley_retract(const StPoint& u, const StTangent& d, double t) {
  require_based_at(u, d);
  return CayleyCurveSt(d).at(t);
}

StPoint cayley_retract_full(const StPoint& u, const StTangent& d, double t) {
  return StPoint::unchecked(cay((0.5 * t) * omega_tilde(u, d)) * u.mat());
}

StPoint quasi_geodesic_retract(const StPoint& u, const StTangent& d, double t) {
  require_based_at(u, d);
  return QuasiGeodesicSt(d).at(t);
}

StTangent cayley_inverse(const StPoint& u, const StPoint& v) {
  if (!u.mat().same_shape(v.mat()))
    throw DimensionError("cayley_inverse: shape mismatch");
  const std::size_t kk = u.mat().cols();
  Matrix m_uv = symplectic_inverse(u.mat()) * v.mat();
  Matrix m_vu = symplectic_inverse(v.mat()) * u.mat();
  for (std::size_t i = 0; i < kk; ++i) {
    m_uv(i, i) += 1.0;
    m_vu(i, i) += 1.0;
  }
  try {
    const Matrix eye = Matrix::identity(kk);
    const LuFactors f_uv = lu_factor(m_uv);
    const LuFactors f_vu = lu_factor(m_vu);
    // The chart matrices are I plus an O(1) product, so a pivot collapsing
    // far below that scale marks the chart boundary even when the residual
    // matrix itself is tiny (e.g. v near -u).
    if (f_uv.singular() || f_vu.singular() || f_uv.min_pivot <= 1e-13 ||
        f_vu.min_pivot <= 1e-13)
      throw SingularMatrixError("cayley_inverse: chart matrix is singular");
    Matrix a = 2.0 * (lu_solve(f_vu, eye) - lu_solve(f_uv, eye));
    Matrix h = 2.0 * (right_solve(v.mat() + u.mat(), m_uv) - u.mat());
    return StTangent::from_split(u, std::move(a), std::move(h));
  } catch (const SingularMatrixError&) {
    throw DomainError("cayley_inverse: points are outside the Cayley chart");
  }
}

}  // namespace sympman

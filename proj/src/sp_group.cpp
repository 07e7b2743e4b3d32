#include "sympman/sp_group.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/matfun.hpp"
#include "sympman/symplectic.hpp"

namespace sympman {

namespace {

void require_square_even(const Matrix& m, const char* who) {
  if (m.rows() != m.cols() || m.rows() % 2 != 0 || m.empty())
    throw DimensionError(std::string(who) + ": need a square 2n x 2n matrix");
}

void require_same_base(const GroupTangent& x1, const GroupTangent& x2) {
  if (!x1.base().mat().identical_to(x2.base().mat()))
    throw StructureError("group tangents have different base points");
}

}  // namespace

SympMatrix::SympMatrix(Matrix m) : mat_(std::move(m)) {
  require_square_even(mat_, "SympMatrix");
  const double res = symplectic_feasibility(mat_);
  if (!(res <= 1e-8))
    throw StructureError("matrix is not symplectic: ||M^+M - I|| = " +
                         std::to_string(res));
}

SympMatrix SympMatrix::unchecked(Matrix m) {
  return SympMatrix(Unchecked{}, std::move(m));
}

GroupTangent::GroupTangent(SympMatrix base, Matrix x)
    : base_(std::move(base)), mat_(std::move(x)) {
  if (!mat_.same_shape(base_.mat()))
    throw DimensionError("GroupTangent: tangent shape must match base");
  const Matrix omega = symplectic_inverse(base_.mat()) * mat_;
  const double res = hamiltonian_residual(omega);
  if (!(res <= 1e-8 * std::max(1.0, mat_.frobenius_norm())))
    throw StructureError("matrix is not tangent at the given group element");
}

GroupTangent GroupTangent::unchecked(SympMatrix base, Matrix x) {
  return GroupTangent(Unchecked{}, std::move(base), std::move(x));
}

double metric_h(const GroupTangent& x1, const GroupTangent& x2) {
  require_same_base(x1, x2);
  return 0.5 * trace_product(symplectic_inverse(x1.mat()), x2.mat());
}

double metric_g(const GroupTangent& x1, const GroupTangent& x2) {
  require_same_base(x1, x2);
  const Matrix minv = symplectic_inverse(x1.base().mat());
  return 0.5 * dot(x1.mat() * minv, x2.mat() * minv);
}

SympMatrix exp_h(const SympMatrix& m, const GroupTangent& x, double t) {
  if (!x.base().mat().identical_to(m.mat()))
    throw StructureError("tangent is not based at the given point");
  const Matrix omega = symplectic_inverse(m.mat()) * x.mat();
  return SympMatrix::unchecked(m.mat() * expm(t * omega));
}

SympMatrix exp_g(const SympMatrix& m, const GroupTangent& x, double t) {
  if (!x.base().mat().identical_to(m.mat()))
    throw StructureError("tangent is not based at the given point");
  const Matrix w = x.mat() * symplectic_inverse(m.mat());
  const Matrix wt = w.transposed();
  return SympMatrix::unchecked(expm(t * (w - wt)) * (expm(t * wt) * m.mat()));
}

GroupTangent grad_g(const SympMatrix& m, const Matrix& egrad) {
  if (!egrad.same_shape(m.mat()))
    throw DimensionError("grad_g: gradient shape must match base");
  const Matrix jm = poisson_apply(Side::left, false, m.mat());
  const Matrix grad = egrad * matmul_tn(m.mat(), m.mat()) +
                      poisson_apply(Side::left, false,
                                    m.mat() * matmul_tn(egrad, jm));
  return GroupTangent(m, grad);
}

}  // namespace sympman

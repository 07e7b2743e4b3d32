#pragma once

#include <cstddef>

#include "sympman/matrix.hpp"

namespace sympman {

// Element of the symplectic group Sp(2n): a 2n x 2n matrix with M^+ M = I.
// The checked constructor is the entry point for external data; curve
// evaluations construct through unchecked() since their drift (which the
// feasibility study measures) can legitimately exceed the admission gate.
class SympMatrix {
 public:
  explicit SympMatrix(Matrix m);
  static SympMatrix unchecked(Matrix m);

  const Matrix& mat() const { return mat_; }
  std::size_t half_dim() const { return mat_.rows() / 2; }

 private:
  struct Unchecked {};
  SympMatrix(Unchecked, Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

// Tangent vector X at M, with M^+ X Hamiltonian. Stores the ambient matrix X;
// Omega = M^+ X is formed on demand.
class GroupTangent {
 public:
  GroupTangent(SympMatrix base, Matrix x);
  static GroupTangent unchecked(SympMatrix base, Matrix x);

  const SympMatrix& base() const { return base_; }
  const Matrix& mat() const { return mat_; }

 private:
  struct Unchecked {};
  GroupTangent(Unchecked, SympMatrix base, Matrix x)
      : base_(std::move(base)), mat_(std::move(x)) {}
  SympMatrix base_;
  Matrix mat_;
};

// Bi-invariant pseudo-Riemannian metric (1/2) tr(X1^+ X2). Indefinite: zero
// or negative values on nonzero tangents are legitimate.
double metric_h(const GroupTangent& x1, const GroupTangent& x2);

// Right-invariant Riemannian metric (1/2) tr((X1 M^+)^T X2 M^+).
double metric_g(const GroupTangent& x1, const GroupTangent& x2);

// Pseudo-Riemannian geodesic M expm(t M^+ X), a one-parameter subgroup
// translate.
SympMatrix exp_h(const SympMatrix& m, const GroupTangent& x, double t);

// Riemannian geodesic expm(t(W - W^T)) expm(t W^T) M with W = X M^+.
SympMatrix exp_g(const SympMatrix& m, const GroupTangent& x, double t);

// Riemannian gradient for metric_g from the Euclidean gradient:
// grad = egrad M^T M + J M egrad^T J M.
GroupTangent grad_g(const SympMatrix& m, const Matrix& egrad);

}  // namespace sympman

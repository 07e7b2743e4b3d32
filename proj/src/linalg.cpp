#include "sympman/linalg.hpp"

#include <cmath>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/kernels.hpp"

namespace sympman {

LuFactors lu_factor(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("lu_factor needs square");
  LuFactors f;
  f.singular_threshold = 1e-13 * a.inf_norm();
  f.lu = a;
  f.perm.resize(a.rows());
  f.min_pivot = kernels::lu_inplace(f.lu.data(), f.perm.data(), a.rows());
  return f;
}

Matrix lu_solve(const LuFactors& f, const Matrix& rhs) {
  const std::size_t m = f.lu.rows();
  if (rhs.rows() != m) throw DimensionError("lu_solve rhs mismatch");
  if (f.singular()) throw SingularMatrixError("matrix is numerically singular");
  Matrix x = rhs;
  const std::size_t q = x.cols();
  // apply permutation
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t p = static_cast<std::size_t>(f.perm[i]);
    if (p != i)
      for (std::size_t c = 0; c < q; ++c) std::swap(x(i, c), x(p, c));
  }
  // forward substitution with unit lower triangle
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const double l = f.lu(i, k);
      if (l == 0.0) continue;
      for (std::size_t c = 0; c < q; ++c) x(i, c) -= l * x(k, c);
    }
  }
  // back substitution
  for (std::size_t ii = m; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < m; ++k) {
      const double u = f.lu(ii, k);
      if (u == 0.0) continue;
      for (std::size_t c = 0; c < q; ++c) x(ii, c) -= u * x(k, c);
    }
    const double d = 1.0 / f.lu(ii, ii);
    for (std::size_t c = 0; c < q; ++c) x(ii, c) *= d;
  }
  return x;
}

Matrix solve(const Matrix& a, const Matrix& rhs) {
  return lu_solve(lu_factor(a), rhs);
}

Matrix right_solve(const Matrix& x, const Matrix& a) {
  return solve(a.transposed(), x.transposed()).transposed();
}

double log_abs_det(const LuFactors& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.lu.rows(); ++i)
    s += std::log(std::abs(f.lu(i, i)));
  return s;
}

Matrix cholesky_factor(const Matrix& spd) {
  if (spd.rows() != spd.cols()) throw DimensionError("cholesky needs square");
  Matrix l = spd;
  if (!kernels::cholesky_inplace(l.data(), l.rows()))
    throw StructureError("matrix is not positive definite");
  return l;
}

Matrix cholesky_solve(const Matrix& l, const Matrix& rhs) {
  const std::size_t m = l.rows();
  if (rhs.rows() != m) throw DimensionError("cholesky_solve rhs mismatch");
  Matrix x = rhs;
  const std::size_t q = x.cols();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      const double v = l(i, k);
      if (v == 0.0) continue;
      for (std::size_t c = 0; c < q; ++c) x(i, c) -= v * x(k, c);
    }
    const double d = 1.0 / l(i, i);
    for (std::size_t c = 0; c < q; ++c) x(i, c) *= d;
  }
  for (std::size_t ii = m; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < m; ++k) {
      const double v = l(k, ii);  // L^T upper entry
      if (v == 0.0) continue;
      for (std::size_t c = 0; c < q; ++c) x(ii, c) -= v * x(k, c);
    }
    const double d = 1.0 / l(ii, ii);
    for (std::size_t c = 0; c < q; ++c) x(ii, c) *= d;
  }
  return x;
}

double spectral_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const std::size_t n = a.cols();
  Matrix v(n, 1);
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = 1.0;
  double sigma = 0.0;
  for (int it = 0; it < 50; ++it) {
    Matrix av = matmul(a, v);
    Matrix w = matmul_tn(a, av);  // A^T A v
    const double wn = w.frobenius_norm();
    if (wn == 0.0) return 0.0;
    w *= 1.0 / wn;
    v = std::move(w);
    const double next = matmul(a, v).frobenius_norm();
    if (it > 0 && std::abs(next - sigma) <= 1e-8 * next) {
      return next;
    }
    sigma = next;
  }
  return sigma;
}

}  // namespace sympman

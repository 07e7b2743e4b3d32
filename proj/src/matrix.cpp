#include "sympman/matrix.hpp"

#include <cmath>
#include <cstring>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/kernels.hpp"

namespace sympman {

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols)
    throw DimensionError("entry count does not match rows*cols");
  if (!all_finite()) throw DomainError("matrix entries must be finite");
}

Matrix::Matrix(std::size_t rows, std::size_t cols,
               std::initializer_list<double> entries)
    : Matrix(rows, cols, std::vector<double>(entries)) {}

Matrix Matrix::identity(std::size_t m) {
  Matrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) out(i, i) = 1.0;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  if (!same_shape(other)) throw DimensionError("shape mismatch in +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  if (!same_shape(other)) throw DimensionError("shape mismatch in -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix Matrix::operator-() const {
  Matrix out = *this;
  for (std::size_t i = 0; i < out.data_.size(); ++i)
    out.data_[i] = -out.data_[i];
  return out;
}

Matrix Matrix::transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : data_) s += v * v;
  return std::sqrt(s);
}

double Matrix::one_norm() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) {
    double a = std::abs(v);
    if (a > best) best = a;
  }
  return best;
}

bool Matrix::all_finite() const {
  for (double v : data_)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nrows,
                     std::size_t ncols) const {
  if (r0 + nrows > rows_ || c0 + ncols > cols_)
    throw DimensionError("block exceeds matrix bounds");
  Matrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    std::memcpy(out.data_.data() + i * ncols,
                data_.data() + (r0 + i) * cols_ + c0, ncols * sizeof(double));
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw DimensionError("block exceeds matrix bounds");
  for (std::size_t i = 0; i < b.rows_; ++i)
    std::memcpy(data_.data() + (r0 + i) * cols_ + c0,
                b.data_.data() + i * b.cols_, b.cols_ * sizeof(double));
}

bool Matrix::identical_to(const Matrix& other) const {
  return same_shape(other) &&
         std::memcmp(data_.data(), other.data_.data(),
                     data_.size() * sizeof(double)) == 0;
}

Matrix operator+(Matrix a, const Matrix& b) {
  a += b;
  return a;
}

Matrix operator-(Matrix a, const Matrix& b) {
  a -= b;
  return a;
}

Matrix operator*(Matrix a, double s) {
  a *= s;
  return a;
}

Matrix operator*(double s, Matrix a) {
  a *= s;
  return a;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul shape mismatch");
  Matrix c(a.rows(), b.cols());
  kernels::gemm_nn(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.cols());
  return c;
}

Matrix matmul_nt(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("matmul_nt shape mismatch");
  Matrix c(a.rows(), b.rows());
  kernels::gemm_nt(a.data(), b.data(), c.data(), a.rows(), a.cols(), b.rows());
  return c;
}

Matrix matmul_tn(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("matmul_tn shape mismatch");
  Matrix c(a.cols(), b.cols());
  kernels::gemm_tn(a.data(), b.data(), c.data(), a.cols(), a.rows(), b.cols());
  return c;
}

Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

double dot(const Matrix& a, const Matrix& b) {
  if (!a.same_shape(b)) throw DimensionError("dot shape mismatch");
  double s = 0.0;
  const double* pa = a.data();
  const double* pb = b.data();
  const std::size_t sz = a.rows() * a.cols();
  for (std::size_t i = 0; i < sz; ++i) s += pa[i] * pb[i];
  return s;
}

double trace_product(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw DimensionError("trace_product shape mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  return s;
}

Matrix hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hcat row mismatch");
  Matrix out(a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vcat(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vcat col mismatch");
  Matrix out(a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

}  // namespace sympman

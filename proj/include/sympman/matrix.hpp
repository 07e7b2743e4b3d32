#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace sympman {

// Dense row-major matrix of doubles. This is the only matrix representation
// in the library; everything downstream (group elements, Stiefel points,
// tangents) wraps it. Multiplication dispatches to the OpenMP kernels in
// kernels.hpp above a size threshold; both paths produce bitwise-identical
// results because the per-element accumulation order is the same.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  // Construction from explicit entries validates finiteness; this is the
  // path external data takes into the library.
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
  Matrix(std::size_t rows, std::size_t cols,
         std::initializer_list<double> entries);

  static Matrix identity(std::size_t m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  double operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);
  Matrix operator-() const;

  Matrix transposed() const;

  double frobenius_norm() const;
  double one_norm() const;  // max absolute column sum
  double inf_norm() const;  // max absolute row sum
  double max_abs() const;
  bool all_finite() const;

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows,
               std::size_t ncols) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  // Exact bitwise equality; used for cheap "same base point" preconditions.
  bool identical_to(const Matrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);

// C = A * B (and the transposed flavors, computed without materializing the
// transpose). All three throw DimensionError on shape mismatch.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_nt(const Matrix& a, const Matrix& b);  // A * B^T
Matrix matmul_tn(const Matrix& a, const Matrix& b);  // A^T * B
Matrix operator*(const Matrix& a, const Matrix& b);

// Frobenius inner product sum_ij A_ij B_ij.
double dot(const Matrix& a, const Matrix& b);

// tr(A * B) in O(nm) without forming the product.
double trace_product(const Matrix& a, const Matrix& b);

Matrix hcat(const Matrix& a, const Matrix& b);
Matrix vcat(const Matrix& a, const Matrix& b);

}  // namespace sympman

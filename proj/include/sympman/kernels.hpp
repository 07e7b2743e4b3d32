#pragma once

#include <cstddef>

// Raw dense kernels. Each has an OpenMP-parallel entry point and a serial
// reference implementation with identical per-element accumulation order,
// kept so the tests can assert bitwise equality and the benchmark target can
// compare them. All pointers are row-major, non-aliased.
namespace sympman::kernels {

// C (m x n) = A (m x p) * B (p x n)
void gemm_nn(const double* a, const double* b, double* c, std::size_t m,
             std::size_t p, std::size_t n);
void gemm_nn_serial(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t p, std::size_t n);

// C (m x n) = A (m x p) * B^T, B stored n x p
void gemm_nt(const double* a, const double* b, double* c, std::size_t m,
             std::size_t p, std::size_t n);
void gemm_nt_serial(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t p, std::size_t n);

// C (m x n) = A^T * B, A stored p x m, B stored p x n
void gemm_tn(const double* a, const double* b, double* c, std::size_t m,
             std::size_t p, std::size_t n);
void gemm_tn_serial(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t p, std::size_t n);

// In-place LU with partial pivoting on an m x m row-major matrix; perm
// receives the row permutation. Returns the smallest absolute pivot seen.
// The OpenMP variant parallelizes the trailing-submatrix update.
double lu_inplace(double* a, int* perm, std::size_t m);
double lu_inplace_serial(double* a, int* perm, std::size_t m);

// In-place lower Cholesky of an SPD m x m matrix (upper triangle ignored on
// input, zeroed on output). Returns false if a nonpositive diagonal pivot
// stops the factorization.
bool cholesky_inplace(double* a, std::size_t m);
bool cholesky_inplace_serial(double* a, std::size_t m);

}  // namespace sympman::kernels

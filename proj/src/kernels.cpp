#include "sympman/kernels.hpp"

#include <cmath>

namespace sympman::kernels {

namespace {
// Below this many multiply-adds the OpenMP fork overhead dominates, so the
// parallel entry points fall through to the serial loop. The loop bodies are
// identical, so the threshold never changes results.
constexpr std::size_t kParallelFlops = 1u << 15;
}  // namespace

void gemm_nn_serial(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t p, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    const double* arow = a + i * p;
    for (std::size_t k = 0; k < p; ++k) {
      const double aik = arow[k];
      const double* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void gemm_nn(const double* a, const double* b, double* c, std::size_t m,
             std::size_t p, std::size_t n) {
  if (m * p * n < kParallelFlops) {
    gemm_nn_serial(a, b, c, m, p, n);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    const double* arow = a + i * p;
    for (std::size_t k = 0; k < p; ++k) {
      const double aik = arow[k];
      const double* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void gemm_nt_serial(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t p, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * p;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b + j * p;
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += arow[k] * brow[k];
      crow[j] = s;
    }
  }
}

void gemm_nt(const double* a, const double* b, double* c, std::size_t m,
             std::size_t p, std::size_t n) {
  if (m * p * n < kParallelFlops) {
    gemm_nt_serial(a, b, c, m, p, n);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = a + i * p;
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const double* brow = b + j * p;
      double s = 0.0;
      for (std::size_t k = 0; k < p; ++k) s += arow[k] * brow[k];
      crow[j] = s;
    }
  }
}

void gemm_tn_serial(const double* a, const double* b, double* c, std::size_t m,
                    std::size_t p, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      const double aki = a[k * m + i];
      const double* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aki * brow[j];
    }
  }
}

void gemm_tn(const double* a, const double* b, double* c, std::size_t m,
             std::size_t p, std::size_t n) {
  if (m * p * n < kParallelFlops) {
    gemm_tn_serial(a, b, c, m, p, n);
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
      const double aki = a[k * m + i];
      const double* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aki * brow[j];
    }
  }
}

namespace {

template <bool Parallel>
double lu_impl(double* a, int* perm, std::size_t m) {
  double min_pivot = -1.0;
  for (std::size_t j = 0; j < m; ++j) {
    // Partial pivoting: largest magnitude in column j at or below the
    // diagonal.
    std::size_t piv = j;
    double best = a[j * m + j] < 0 ? -a[j * m + j] : a[j * m + j];
    for (std::size_t i = j + 1; i < m; ++i) {
      double v = a[i * m + j];
      if (v < 0) v = -v;
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    perm[j] = static_cast<int>(piv);
    if (piv != j) {
      for (std::size_t c = 0; c < m; ++c) {
        double tmp = a[j * m + c];
        a[j * m + c] = a[piv * m + c];
        a[piv * m + c] = tmp;
      }
    }
    if (min_pivot < 0 || best < min_pivot) min_pivot = best;
    if (best == 0.0) continue;  // caller decides whether this is fatal
    const double inv = 1.0 / a[j * m + j];
    const double* prow = a + j * m;
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (m - j > 64)
      for (std::size_t i = j + 1; i < m; ++i) {
        double* row = a + i * m;
        const double l = row[j] * inv;
        row[j] = l;
        for (std::size_t c = j + 1; c < m; ++c) row[c] -= l * prow[c];
      }
    } else {
      for (std::size_t i = j + 1; i < m; ++i) {
        double* row = a + i * m;
        const double l = row[j] * inv;
        row[j] = l;
        for (std::size_t c = j + 1; c < m; ++c) row[c] -= l * prow[c];
      }
    }
  }
  return min_pivot;
}

template <bool Parallel>
bool cholesky_impl(double* a, std::size_t m) {
  for (std::size_t j = 0; j < m; ++j) {
    double d = a[j * m + j];
    const double* jrow = a + j * m;
    for (std::size_t k = 0; k < j; ++k) d -= jrow[k] * jrow[k];
    if (d <= 0.0) return false;
    const double ljj = std::sqrt(d);
    a[j * m + j] = ljj;
    const double inv = 1.0 / ljj;
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (m - j > 64)
      for (std::size_t i = j + 1; i < m; ++i) {
        double* irow = a + i * m;
        double s = irow[j];
        for (std::size_t k = 0; k < j; ++k) s -= irow[k] * jrow[k];
        irow[j] = s * inv;
      }
    } else {
      for (std::size_t i = j + 1; i < m; ++i) {
        double* irow = a + i * m;
        double s = irow[j];
        for (std::size_t k = 0; k < j; ++k) s -= irow[k] * jrow[k];
        irow[j] = s * inv;
      }
    }
  }
  // zero the strict upper triangle so the output is exactly L
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) a[i * m + j] = 0.0;
  return true;
}

}  // namespace

double lu_inplace(double* a, int* perm, std::size_t m) {
  return lu_impl<true>(a, perm, m);
}
double lu_inplace_serial(double* a, int* perm, std::size_t m) {
  return lu_impl<false>(a, perm, m);
}
bool cholesky_inplace(double* a, std::size_t m) {
  return cholesky_impl<true>(a, m);
}
bool cholesky_inplace_serial(double* a, std::size_t m) {
  return cholesky_impl<false>(a, m);
}

}  // namespace sympman::kernels

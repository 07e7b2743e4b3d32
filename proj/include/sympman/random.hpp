#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "sympman/matrix.hpp"

namespace sympman {

// Deterministic random source. Same seed and call sequence give bit-identical
// draws on every platform; the normal variates use an explicit Box-Muller so
// the stream does not depend on the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform draw in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double gaussian();

  Matrix gaussian_matrix(std::size_t rows, std::size_t cols);

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Random Hamiltonian [[A, B], [C, -A^T]] with B, C symmetrized; the structure
// residual is exactly zero by construction.
Matrix rand_hamiltonian(Rng& rng, std::size_t n);

// Random element of Sp(2n), the Cayley transform of a unit-norm Hamiltonian.
Matrix rand_symplectic(Rng& rng, std::size_t n);

enum class StiefelScale { cay_half, cay_one };

// Random symplectic Stiefel representative cay(s*Omega)*E with Omega drawn
// Hamiltonian and normalized to unit Frobenius norm, s in {1/2, 1}. A
// singular Cayley solve triggers a fresh draw, at most three retries.
Matrix rand_stiefel_point(Rng& rng, std::size_t n, std::size_t k,
                          StiefelScale scale);

}  // namespace sympman

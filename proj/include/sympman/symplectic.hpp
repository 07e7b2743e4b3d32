#pragma once

#include "sympman/matrix.hpp"

namespace sympman {

// Action of the Poisson matrix J_{2p} = [[0, I_p], [-I_p, 0]] without ever
// materializing it: left means J*m (or J^T*m), right means m*J (or m*J^T).
enum class Side { left, right };
Matrix poisson_apply(Side side, bool transpose, const Matrix& m);

// Explicit J_{2p}; only tests and oracles should need it.
Matrix poisson_matrix(std::size_t p);

// Symplectic inverse A^+ = J_{2k}^T A^T J_{2n} of a 2n x 2k matrix, computed
// as a pure index remap (no arithmetic). For symplectic square M this is the
// actual inverse.
Matrix symplectic_inverse(const Matrix& a);

// ||U^+ U - I||_F, the residual that measures staying on the manifold.
double symplectic_feasibility(const Matrix& u);

// ||W^+ + W||_F, zero exactly on Hamiltonian matrices.
double hamiltonian_residual(const Matrix& w);

// Canonical 2n x 2k basis: columns e_1..e_k, e_{n+1}..e_{n+k}.
Matrix canonical_basis(std::size_t n, std::size_t k);

}  // namespace sympman

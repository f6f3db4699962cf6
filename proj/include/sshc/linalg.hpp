#pragma once
// Self-contained dense complex linear algebra: full non-Hermitian
// eigendecomposition with paired left/right vectors, partially pivoted linear
// solves, and adaptive Schroedinger-picture time evolution.

#include <vector>

#include "sshc/complex_matrix.hpp"

namespace sshc::linalg {

// How left eigenvectors are produced.
//   automatic  - conjugate shortcut when H equals its transpose entrywise,
//                adjoint problem otherwise
//   conjugate  - w_i = conj(v_i); valid only for complex-symmetric H
//   adjoint    - independently diagonalize H^dagger and pair by eigenvalue
enum class LeftMode { automatic, conjugate, adjoint };

struct EigenDecomposition {
    std::vector<cdouble> eigenvalues;  // sorted by (Re, Im) ascending
    ComplexMatrix right_vectors;       // columns, unit 2-norm
    ComplexMatrix left_vectors;        // columns, scaled so <w_i|v_i> = 1
    double residual_max = 0.0;         // max over i of both residual norms
};

// Full eigendecomposition of a square matrix, dimension <= 1024.
// Balance -> Householder Hessenberg -> implicitly single-shifted QR with
// deflation -> inverse iteration, then biorthonormal pairing.
// Throws NonConvergence if the QR sweep budget is exhausted and
// DefectivePairing when a left/right overlap is below 1e-8 (coalesced
// eigenvectors, e.g. at an exceptional point).
EigenDecomposition eig(const ComplexMatrix& H, LeftMode mode = LeftMode::automatic);

// Solve A x = b by LU with partial pivoting. Throws SingularMatrix when a
// pivot falls below 1e-14 * ||A||_F.
cvector solve(const ComplexMatrix& A, const cvector& b);

// Integrate psi' = -i H psi from t_grid.front() (which must be 0) through all
// grid times with an embedded Dormand-Prince 5(4) pair; returns psi at each
// grid time. H may be non-Hermitian. Throws StepUnderflow if the adaptive
// step collapses below 1e-12 of the grid span.
std::vector<cvector> evolve(const ComplexMatrix& H, const cvector& psi0,
                            const std::vector<double>& t_grid);

}  // namespace sshc::linalg

#pragma once

#include "landaulab/common.hpp"

namespace landaulab::linalg {

// Pins the BLAS backend to one thread. Realization-level parallelism lives in
// the work queue, and a fixed BLAS thread count keeps eigensolver output
// byte-stable under any --workers setting. Called lazily by every entry point
// below; safe to call more than once.
void use_deterministic_backend();

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, phase-fixed
};

// Full Hermitian eigendecomposition (LAPACK zheevd, lower triangle).
// Phase convention: the largest-magnitude component of each eigenvector is
// rotated to the positive real axis, so regenerated decompositions are
// bit-identical given identical input.
EigenSystem eigh(const Matrix& a);

// Eigenvalues only; roughly 3x cheaper than eigh.
RealVector eigvalsh(const Matrix& a);

// Number of eigenvalues of `a` strictly below `shift`, computed from the
// inertia of the Bunch-Kaufman factorization of (a - shift*I). Independent of
// the eigensolver path; used by tests as a counting oracle.
int count_below(const Matrix& a, double shift);

// Largest |eigenvalue| of a Hermitian matrix estimated by `steps` power
// iterations from a fixed deterministic start vector.
double power_iteration_norm(const Matrix& a, int steps);

// max_ij |a - a^H| (entrywise), the Hermiticity defect.
double hermiticity_defect(const Matrix& a);

}  // namespace landaulab::linalg

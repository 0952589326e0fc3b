#pragma once

#include "landaulab/hamiltonian.hpp"

namespace landaulab {

inline constexpr int kDefaultDimensionCap = 4096;

// Eigensystem of one Hamiltonian realization; the source of every projection.
struct SpectralDecomposition {
  RealVector eigenvalues;  // ascending
  Matrix eigenvectors;     // orthonormal columns; empty for values-only runs
  OperatorDescriptor provenance;

  int dimension() const { return static_cast<int>(eigenvalues.size()); }
  bool has_vectors() const { return eigenvectors.size() > 0; }

  int count_at_or_below(double energy) const;
  int count_in(double lo, double hi) const;  // closed window [lo, hi]
};

// Full dense eigendecomposition (deterministic: fixed algorithm, ascending
// order, largest component of each vector rotated real-positive).
SpectralDecomposition diagonalize(const HermitianOperator& op,
                                  int dimension_cap = kDefaultDimensionCap);

// Eigenvalues only; for counting statistics.
SpectralDecomposition eigenvalues_of(const HermitianOperator& op,
                                     int dimension_cap = kDefaultDimensionCap);

// Spectral projection stored through an orthonormal basis of its range.
struct FermiProjection {
  double window_lo = 0.0;  // -inf encoded as lowest()
  double window_hi = 0.0;
  Matrix basis;  // dim x rank

  int rank() const { return static_cast<int>(basis.cols()); }
  int dimension() const { return static_cast<int>(basis.rows()); }
  Matrix dense() const { return basis * basis.adjoint(); }
};

// P = sum_{E_n <= E_F} |phi_n><phi_n|.
FermiProjection fermi_projection(const SpectralDecomposition& spec,
                                 double fermi_energy);

// chi_J(H) for the closed window J = [lo, hi].
FermiProjection window_projection(const SpectralDecomposition& spec, double lo,
                                  double hi);

// Projection onto an explicit set of eigenvector columns (tests use this to
// split bands into orthogonal pieces).
FermiProjection projection_from_columns(const SpectralDecomposition& spec,
                                        const std::vector<int>& columns);

}  // namespace landaulab

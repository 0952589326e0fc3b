#pragma once

#include <cstdint>
#include <string>

#include "landaulab/gauge.hpp"
#include "landaulab/geometry.hpp"

namespace landaulab {

struct OperatorDescriptor {
  double field = 0.0;
  double side = 0.0;
  int grid = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  int realization = -1;  // -1: clean
  std::string tag;
};

// Dense Hermitian operator with provenance. Self-adjoint to within 1e-12
// relative entrywise asymmetry, real diagonal.
struct HermitianOperator {
  Matrix matrix;
  OperatorDescriptor descriptor;

  int dimension() const { return static_cast<int>(matrix.rows()); }
  double hermiticity_defect() const;  // max|H - H^dag| / max|H|
};

// Magnetic 5-point finite-difference kinetic operator
//   (1/a^2) (4 I - sum of phased hops),
// magnetic-periodic across both cycles. Spectrum lies in [0, 8/a^2]; the low
// clusters approximate the Landau levels (2n-1)B to O((a sqrt(B))^2).
HermitianOperator build_free_hamiltonian(const MagneticTorus& torus,
                                         const GaugeField& gauge);
HermitianOperator build_free_hamiltonian(const MagneticTorus& torus);

// Free operator plus lambda * diag(potential). `potential` holds one value
// per grid site, in the site-index order of MagneticTorus.
HermitianOperator build_hamiltonian(const MagneticTorus& torus,
                                    const GaugeField& gauge,
                                    const RealVector& potential, double lambda);

}  // namespace landaulab

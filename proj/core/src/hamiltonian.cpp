#include "landaulab/hamiltonian.hpp"

#include "landaulab/linalg.hpp"

namespace landaulab {

double HermitianOperator::hermiticity_defect() const {
  const double scale = matrix.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return linalg::hermiticity_defect(matrix) / scale;
}

HermitianOperator build_free_hamiltonian(const MagneticTorus& torus,
                                         const GaugeField& gauge) {
  const int n = torus.grid_per_side();
  if (gauge.grid != n) {
    throw std::invalid_argument("build_free_hamiltonian: gauge/torus mismatch");
  }
  const double a = torus.spacing();
  const double w = 1.0 / (a * a);

  HermitianOperator op;
  op.matrix = Matrix::Zero(torus.sites(), torus.sites());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int s = torus.site_index(i, j);
      const int sx = torus.site_index(i + 1, j);
      const int sy = torus.site_index(i, j + 1);
      op.matrix(s, s) = 4.0 * w;
      // Hop s -> s+e carries the link phase; the reversed bond gets the
      // conjugate, keeping the operator exactly Hermitian.
      op.matrix(sx, s) -= w * gauge.link_x[s];
      op.matrix(s, sx) -= w * std::conj(gauge.link_x[s]);
      op.matrix(sy, s) -= w * gauge.link_y[s];
      op.matrix(s, sy) -= w * std::conj(gauge.link_y[s]);
    }
  }
  op.descriptor.field = torus.field();
  op.descriptor.side = torus.side();
  op.descriptor.grid = n;
  op.descriptor.tag = "free";
  return op;
}

HermitianOperator build_free_hamiltonian(const MagneticTorus& torus) {
  return build_free_hamiltonian(torus, GaugeField::landau(torus));
}

HermitianOperator build_hamiltonian(const MagneticTorus& torus,
                                    const GaugeField& gauge,
                                    const RealVector& potential,
                                    double lambda) {
  if (potential.size() != torus.sites()) {
    throw std::invalid_argument("build_hamiltonian: potential size mismatch");
  }
  HermitianOperator op = build_free_hamiltonian(torus, gauge);
  for (int s = 0; s < torus.sites(); ++s) {
    op.matrix(s, s) += lambda * potential(s);
  }
  op.descriptor.lambda = lambda;
  op.descriptor.tag = "disordered";
  return op;
}

}  // namespace landaulab

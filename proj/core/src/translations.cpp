#include "landaulab/translations.hpp"

#include <cmath>

#include "landaulab/linalg.hpp"

namespace landaulab {

Vector TranslationOp::apply(const Vector& v) const {
  const int n = grid;
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw std::invalid_argument("TranslationOp: vector dimension mismatch");
  }
  Vector out(v.size());
  for (int j = 0; j < n; ++j) {
    const int js = ((j - shift_y) % n + n) % n;
    for (int i = 0; i < n; ++i) {
      const int is = ((i - shift_x) % n + n) % n;
      out(i + n * j) = phase[i + n * j] * v(is + n * js);
    }
  }
  return out;
}

Matrix TranslationOp::conjugate(const Matrix& h) const {
  const int n = grid;
  const int dim = n * n;
  if (h.rows() != dim || h.cols() != dim) {
    throw std::invalid_argument("TranslationOp: matrix dimension mismatch");
  }
  // (U H U*)_{xy} = phase(x) H(src(x), src(y)) conj(phase(y))
  std::vector<int> src(dim);
  for (int j = 0; j < n; ++j) {
    const int js = ((j - shift_y) % n + n) % n;
    for (int i = 0; i < n; ++i) {
      const int is = ((i - shift_x) % n + n) % n;
      src[i + n * j] = is + n * js;
    }
  }
  Matrix out(dim, dim);
  for (int y = 0; y < dim; ++y) {
    for (int x = 0; x < dim; ++x) {
      out(x, y) = phase[x] * h(src[x], src[y]) * std::conj(phase[y]);
    }
  }
  return out;
}

Matrix TranslationOp::dense() const {
  const int n = grid;
  const int dim = n * n;
  Matrix u = Matrix::Zero(dim, dim);
  for (int j = 0; j < n; ++j) {
    const int js = ((j - shift_y) % n + n) % n;
    for (int i = 0; i < n; ++i) {
      const int is = ((i - shift_x) % n + n) % n;
      u(i + n * j, is + n * js) = phase[i + n * j];
    }
  }
  return u;
}

bool translation_steps_admissible(const MagneticTorus& torus, int steps_x,
                                  int steps_y) {
  const long long n = torus.grid_per_side();
  const long long q = torus.flux_quanta();
  return (q * steps_x) % n == 0 && (q * steps_y) % n == 0;
}

TranslationOp make_translation_steps(const MagneticTorus& torus, int steps_x,
                                     int steps_y) {
  const int n = torus.grid_per_side();
  if (!translation_steps_admissible(torus, steps_x, steps_y)) {
    throw std::invalid_argument(
        "make_translation_steps: step is not magnetically admissible "
        "(needs N | n_phi * steps)");
  }
  const int m = ((steps_x % n) + n) % n;
  const int k = ((steps_y % n) + n) % n;
  const double phi = torus.plaquette_flux();

  TranslationOp op;
  op.grid = n;
  op.shift_x = m;
  op.shift_y = k;
  op.phase.resize(static_cast<std::size_t>(n) * n);
  // Phase pattern that restores the Landau-gauge link field after the shift;
  // the boundary term moves the gauge seam back to the last column.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double theta = phi * m * j;
      if (i < m) theta -= phi * n * j;
      op.phase[i + n * j] = cplx(std::cos(theta), std::sin(theta));
    }
  }
  return op;
}

TranslationOp make_translation(const MagneticTorus& torus, int a1, int a2) {
  if (!torus.cells_aligned()) {
    throw std::invalid_argument(
        "make_translation: unit cells are not grid-aligned on this torus");
  }
  const int s = torus.steps_per_cell();
  return make_translation_steps(torus, a1 * s, a2 * s);
}

Vector magnetic_translate(const MagneticTorus& torus, int a1, int a2,
                          const Vector& v) {
  return make_translation(torus, a1, a2).apply(v);
}

double covariance_check(const MagneticTorus& torus, const GaugeField& gauge,
                        const DisorderRealization& realization,
                        const SingleSiteProfile& profile, double lambda,
                        int a1, int a2) {
  const TranslationOp u = make_translation(torus, a1, a2);
  const HermitianOperator h =
      build_hamiltonian(torus, gauge, realization.potential, lambda);
  const DisorderRealization shifted =
      shift_realization(realization, a1, a2, profile, torus);
  const HermitianOperator h_shifted =
      build_hamiltonian(torus, gauge, shifted.potential, lambda);
  const Matrix diff = u.conjugate(h.matrix) - h_shifted.matrix;
  return linalg::power_iteration_norm(diff, 20);
}

}  // namespace landaulab

#include "landaulab/linalg.hpp"

#include <cmath>
#include <mutex>

#include <lapacke.h>

extern "C" void openblas_set_num_threads(int);

namespace landaulab::linalg {

void use_deterministic_backend() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}

namespace {

void require_square(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("linalg: matrix must be square");
  }
}

void fix_phases(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double m = std::norm(vectors(r, c));
      if (m > best) {
        best = m;
        imax = r;
      }
    }
    const cplx pivot = vectors(imax, c);
    const double mag = std::abs(pivot);
    if (mag > 0.0) {
      vectors.col(c) *= std::conj(pivot) / mag;
    }
  }
}

}  // namespace

EigenSystem eigh(const Matrix& a) {
  use_deterministic_backend();
  require_square(a);
  const lapack_int n = static_cast<lapack_int>(a.rows());
  EigenSystem sys;
  sys.vectors = a;
  sys.values.resize(n);
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'V', 'L', n,
      reinterpret_cast<lapack_complex_double*>(sys.vectors.data()), n,
      sys.values.data());
  if (info != 0) {
    throw NumericalError("zheevd failed with info=" + std::to_string(info));
  }
  fix_phases(sys.vectors);
  return sys;
}

RealVector eigvalsh(const Matrix& a) {
  use_deterministic_backend();
  require_square(a);
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  RealVector values(n);
  const lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, 'N', 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, values.data());
  if (info != 0) {
    throw NumericalError("zheevd failed with info=" + std::to_string(info));
  }
  return values;
}

int count_below(const Matrix& a, double shift) {
  use_deterministic_backend();
  require_square(a);
  const lapack_int n = static_cast<lapack_int>(a.rows());
  Matrix work = a;
  for (lapack_int i = 0; i < n; ++i) {
    work(i, i) -= shift;
  }
  std::vector<lapack_int> ipiv(n);
  const lapack_int info = LAPACKE_zhetrf(
      LAPACK_COL_MAJOR, 'L', n,
      reinterpret_cast<lapack_complex_double*>(work.data()), n, ipiv.data());
  if (info < 0) {
    throw NumericalError("zhetrf failed with info=" + std::to_string(info));
  }
  // Inertia from the block-diagonal factor: 1x1 blocks contribute their sign,
  // a 2x2 block with negative determinant contributes one of each sign.
  int negatives = 0;
  lapack_int k = 0;
  while (k < n) {
    if (ipiv[k] > 0) {
      if (work(k, k).real() < 0.0) ++negatives;
      ++k;
    } else {
      const double d11 = work(k, k).real();
      const double d22 = work(k + 1, k + 1).real();
      const double off = std::norm(work(k + 1, k));
      const double det = d11 * d22 - off;
      if (det < 0.0) {
        ++negatives;
      } else if (d11 + d22 < 0.0) {
        negatives += 2;
      }
      k += 2;
    }
  }
  return negatives;
}

double power_iteration_norm(const Matrix& a, int steps) {
  require_square(a);
  const Eigen::Index n = a.rows();
  if (n == 0) return 0.0;
  Vector v(n);
  // Fixed quasi-random start; full support so no eigenvector is missed.
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1);
    v(i) = cplx(std::cos(0.7 * t), std::sin(1.3 * t));
  }
  v.normalize();
  double estimate = 0.0;
  for (int s = 0; s < steps; ++s) {
    Vector w = a * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    estimate = norm;
    v = w / norm;
  }
  return estimate;
}

double hermiticity_defect(const Matrix& a) {
  require_square(a);
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace landaulab::linalg

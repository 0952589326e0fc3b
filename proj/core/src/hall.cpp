#include "landaulab/hall.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace landaulab {

namespace {

constexpr double kJumpTol = 1e-12;

RealVector switch_values(const MagneticTorus& torus, double jump, int axis) {
  RealVector v(torus.sites());
  for (int s = 0; s < torus.sites(); ++s) {
    const auto pos = torus.site_position(s);
    v(s) = pos[axis] >= jump - kJumpTol ? 1.0 : 0.0;
  }
  return v;
}

}  // namespace

Vector theta_density(const FermiProjection& p, const MagneticTorus& torus,
                     const SwitchPair& switches) {
  const int dim = torus.sites();
  if (p.rank() == 0) return Vector::Zero(dim);
  if (p.dimension() != dim) {
    throw std::invalid_argument("theta_density: projection/torus mismatch");
  }
  const RealVector l1 = switch_values(torus, switches.r, 0);
  const RealVector l2 = switch_values(torus, switches.s, 1);
  // P[[P,L1],[P,L2]] = [P L1 P, P L2 P]; in the range basis the commutator is
  // [G1, G2] with G_j = Phi^dag L_j Phi, and the site density needs one row
  // of Phi on each side.
  const Matrix g1 = p.basis.adjoint() * l1.asDiagonal() * p.basis;
  const Matrix g2 = p.basis.adjoint() * l2.asDiagonal() * p.basis;
  const Matrix k = g1 * g2 - g2 * g1;
  const Matrix e = p.basis * k;
  Vector density(dim);
  for (int x = 0; x < dim; ++x) {
    density(x) = e.row(x).dot(p.basis.row(x));  // dot conjugates the left arg
  }
  return density;
}

bool switches_admissible(const MagneticTorus& torus, const SwitchPair& switches,
                         double window_radius) {
  const double l = torus.side();
  if (!(switches.r > 0.0 && switches.r < l && switches.s > 0.0 &&
        switches.s < l)) {
    return false;
  }
  if (window_radius > 0.25 * l + 1e-12) return false;
  const double seam_r = std::min(switches.r, l - switches.r);
  const double seam_s = std::min(switches.s, l - switches.s);
  return seam_r >= 2.0 * window_radius - 1e-12 &&
         seam_s >= 2.0 * window_radius - 1e-12;
}

double default_window_radius(const MagneticTorus& torus) {
  return 0.25 * torus.side() - torus.spacing();
}

HallResult theta_windowed(const FermiProjection& p, const MagneticTorus& torus,
                          const SwitchPair& switches, double window_radius) {
  if (!switches_admissible(torus, switches, window_radius)) {
    throw GuardError(
        "theta_windowed: window too large or switches too close to the seam");
  }
  const Vector density = theta_density(p, torus, switches);
  const std::array<double, 2> center{switches.r, switches.s};
  const double a = torus.spacing();

  cplx theta = 0.0;
  double ring_max = 0.0;
  int ring_sites = 0;
  for (int s = 0; s < torus.sites(); ++s) {
    const double d = torus.distance_to(s, center);
    if (d <= window_radius) {
      theta += density(s);
      if (d > window_radius - a) {
        ring_max = std::max(ring_max, std::abs(density(s)));
        ++ring_sites;
      }
    }
  }

  HallResult result;
  result.theta = theta;
  // theta is -i|theta| for the clean lowest band in this gauge orientation;
  // +2 pi i theta makes that sigma_h = +1.
  result.sigma_h = cplx(0.0, 2.0 * M_PI) * theta;
  result.window_radius = window_radius;
  result.truncation_estimate = 2.0 * M_PI * ring_max * ring_sites;
  return result;
}

double theta_shift_invariance(const FermiProjection& p,
                              const MagneticTorus& torus, const SwitchPair& a,
                              const SwitchPair& b, double window_radius) {
  const HallResult ra = theta_windowed(p, torus, a, window_radius);
  const HallResult rb = theta_windowed(p, torus, b, window_radius);
  return std::abs(ra.theta - rb.theta);
}

double theta_additivity(const FermiProjection& p, const FermiProjection& q,
                        const MagneticTorus& torus, const SwitchPair& switches,
                        double window_radius) {
  if (p.dimension() != q.dimension()) {
    throw std::invalid_argument("theta_additivity: dimension mismatch");
  }
  if (p.rank() > 0 && q.rank() > 0) {
    const double overlap = (p.basis.adjoint() * q.basis).norm();
    if (overlap > 1e-9) {
      throw std::invalid_argument(
          "theta_additivity: projections are not orthogonal (||PQ|| = " +
          std::to_string(overlap) + ")");
    }
  }
  FermiProjection sum;
  sum.basis.resize(p.dimension(), p.rank() + q.rank());
  sum.basis.leftCols(p.rank()) = p.basis;
  sum.basis.rightCols(q.rank()) = q.basis;
  const cplx tp = theta_windowed(p, torus, switches, window_radius).theta;
  const cplx tq = theta_windowed(q, torus, switches, window_radius).theta;
  const cplx tsum = theta_windowed(sum, torus, switches, window_radius).theta;
  return std::abs(tsum - tp - tq);
}

BottResult bott_index(const FermiProjection& p, const MagneticTorus& torus) {
  BottResult result;
  const int r = p.rank();
  if (r == 0) return result;
  if (p.dimension() != torus.sites()) {
    throw std::invalid_argument("bott_index: projection/torus mismatch");
  }
  const double defect =
      (p.basis.adjoint() * p.basis - Matrix::Identity(r, r)).cwiseAbs().maxCoeff();
  if (defect > 1e-9) {
    throw std::invalid_argument("bott_index: projection basis not orthonormal");
  }

  const int dim = torus.sites();
  Vector d1(dim), d2(dim);
  const double two_pi_over_l = 2.0 * M_PI / torus.side();
  for (int s = 0; s < dim; ++s) {
    const auto pos = torus.site_position(s);
    d1(s) = std::polar(1.0, two_pi_over_l * pos[0]);
    d2(s) = std::polar(1.0, two_pi_over_l * pos[1]);
  }
  // Blocks of U = P e^{i theta X1} P + (1-P) etc. on the range of P.
  const Matrix u = p.basis.adjoint() * d1.asDiagonal() * p.basis;
  const Matrix v = p.basis.adjoint() * d2.asDiagonal() * p.basis;
  const Matrix m = v * u * v.adjoint() * u.adjoint();

  const double su =
      Eigen::JacobiSVD<Matrix>(u).singularValues().minCoeff();
  const double sv =
      Eigen::JacobiSVD<Matrix>(v).singularValues().minCoeff();
  result.min_singular_value = std::min(su, sv);
  if (result.min_singular_value < 0.1) result.branch_warning = true;

  Eigen::ComplexEigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("bott_index: eigensolver failed");
  }
  double sum = 0.0;
  for (int k = 0; k < r; ++k) {
    const double angle = std::arg(solver.eigenvalues()(k));
    if (std::abs(angle) > 0.9 * M_PI) result.branch_warning = true;
    sum += angle;
  }
  result.raw = sum / (2.0 * M_PI);
  result.index = static_cast<int>(std::lround(result.raw));
  result.residue = std::abs(result.raw - result.index);
  return result;
}

std::vector<HallTraceRow> hall_trace(const SpectralDecomposition& spec,
                                     const MagneticTorus& torus,
                                     const std::vector<double>& energies,
                                     const SwitchPair& switches,
                                     double window_radius) {
  std::vector<HallTraceRow> rows;
  rows.reserve(energies.size());
  for (const double e : energies) {
    const FermiProjection p = fermi_projection(spec, e);
    HallTraceRow row;
    row.energy = e;
    row.rank = p.rank();
    const HallResult hall = theta_windowed(p, torus, switches, window_radius);
    row.re_sigma = hall.sigma_h.real();
    row.truncation_estimate = hall.truncation_estimate;
    const BottResult bott = bott_index(p, torus);
    row.bott_raw = bott.raw;
    row.bott = bott.index;
    row.bott_residue = bott.residue;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace landaulab

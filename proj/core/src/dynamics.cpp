#include "landaulab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace landaulab {

namespace {
constexpr double kFilterFloor = 1e-14;
}

double EnergyBump::operator()(double energy) const {
  const double s = (energy - center) / width;
  const double s2 = s * s;
  if (s2 >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s2));
}

MomentEvaluator::MomentEvaluator(const SpectralDecomposition& spec,
                                 const MagneticTorus& torus,
                                 const EnergyBump& bump, double p) {
  if (!spec.has_vectors()) {
    throw std::invalid_argument("MomentEvaluator: decomposition has no vectors");
  }
  if (spec.dimension() != torus.sites()) {
    throw std::invalid_argument("MomentEvaluator: decomposition/torus mismatch");
  }
  if (p < 0.0) {
    throw std::invalid_argument("MomentEvaluator: moment order p >= 0");
  }

  std::vector<int> window;
  std::vector<double> filter;
  for (int n = 0; n < spec.dimension(); ++n) {
    const double x = bump(spec.eigenvalues(n));
    if (x > kFilterFloor) {
      window.push_back(n);
      filter.push_back(x);
      energies_.push_back(spec.eigenvalues(n));
    }
  }
  const int nw = static_cast<int>(window.size());
  if (nw == 0) {
    weight_.resize(0, 0);
    return;
  }

  // Center unit cell and its grid sites.
  const int cells = torus.cells_per_side();
  const int c_star = cells / 2;
  const std::array<double, 2> cell_center{static_cast<double>(c_star),
                                          static_cast<double>(c_star)};
  std::vector<int> cell_sites;
  for (int s = 0; s < torus.sites(); ++s) {
    const auto pos = torus.site_position(s);
    const double dx = torus.wrap_delta(pos[0] - cell_center[0]);
    const double dy = torus.wrap_delta(pos[1] - cell_center[1]);
    if (dx >= -0.5 && dx < 0.5 && dy >= -0.5 && dy < 0.5) {
      cell_sites.push_back(s);
    }
  }

  Matrix phi(spec.dimension(), nw);
  for (int k = 0; k < nw; ++k) phi.col(k) = spec.eigenvectors.col(window[k]);

  // W_{mn} in the filtered window.
  RealVector wp(spec.dimension());
  for (int s = 0; s < torus.sites(); ++s) {
    const double d = torus.distance_to(s, cell_center);
    wp(s) = std::pow(1.0 + d * d, 0.5 * p);
  }
  const Matrix wmat = phi.adjoint() * wp.asDiagonal() * phi;

  // S_{nm} = sum_{j in cell} c_{n,j} conj(c_{m,j}) with c_{n,j} = conj(phi_n(x_j)).
  Matrix c(nw, static_cast<Eigen::Index>(cell_sites.size()));
  for (std::size_t j = 0; j < cell_sites.size(); ++j) {
    for (int k = 0; k < nw; ++k) {
      c(k, static_cast<Eigen::Index>(j)) = std::conj(phi(cell_sites[j], k));
    }
  }
  const Matrix s_mat = c * c.adjoint();

  const double a = torus.spacing();
  weight_.resize(nw, nw);
  for (int m = 0; m < nw; ++m) {
    for (int n = 0; n < nw; ++n) {
      // G_{mn} = a^2 X_m X_n W_{mn} S_{nm}; Hermitian by construction.
      weight_(m, n) = a * a * filter[m] * filter[n] * wmat(m, n) * s_mat(n, m);
    }
  }
}

double MomentEvaluator::instant(double t) const {
  if (t < 0.0) {
    throw std::invalid_argument("MomentEvaluator::instant: t >= 0");
  }
  const int nw = window_states();
  if (nw == 0) return 0.0;
  // M(t) = sum_{mn} e^{i(E_m - E_n) t} G_{mn}
  Vector phase(nw);
  for (int k = 0; k < nw; ++k) phase(k) = std::polar(1.0, energies_[k] * t);
  const cplx value = phase.dot(weight_ * phase);  // conjugates the left factor
  return value.real();
}

double MomentEvaluator::time_averaged(double T) const {
  if (!(T > 0.0)) {
    throw std::invalid_argument("MomentEvaluator::time_averaged: T > 0");
  }
  const int nw = window_states();
  if (nw == 0) return 0.0;
  cplx acc = 0.0;
  for (int m = 0; m < nw; ++m) {
    for (int n = 0; n < nw; ++n) {
      const double delta = energies_[m] - energies_[n];
      acc += weight_(m, n) / cplx(1.0, -T * delta);
    }
  }
  return acc.real();
}

double MomentEvaluator::time_averaged_quadrature(
    double T, const quad::LogPanelRule& rule) const {
  if (!(T > 0.0)) {
    throw std::invalid_argument("MomentEvaluator: T > 0");
  }
  if (window_states() == 0) return 0.0;
  const double horizon = 20.0 * T;
  return quad::integrate_log_panels(
      [&](double t) { return instant(t) * std::exp(-t / T) / T; }, horizon,
      rule);
}

double moment_instant(const SpectralDecomposition& spec,
                      const MagneticTorus& torus, const EnergyBump& bump,
                      double p, double t) {
  return MomentEvaluator(spec, torus, bump, p).instant(t);
}

double moment_time_averaged(const SpectralDecomposition& spec,
                            const MagneticTorus& torus, const EnergyBump& bump,
                            double p, double T) {
  return MomentEvaluator(spec, torus, bump, p).time_averaged(T);
}

TransportSeries transport_series(const SpectralDecomposition& spec,
                                 const MagneticTorus& torus,
                                 const EnergyBump& bump, double p,
                                 const std::vector<double>& times,
                                 bool use_quadrature) {
  const MomentEvaluator eval(spec, torus, bump, p);
  TransportSeries series;
  series.p = p;
  series.evaluator = use_quadrature ? "quadrature" : "exact_kernel";
  series.times = times;
  series.values.reserve(times.size());
  for (const double T : times) {
    series.values.push_back(use_quadrature ? eval.time_averaged_quadrature(T)
                                           : eval.time_averaged(T));
  }
  return series;
}

TransportFit transport_fit(const TransportSeries& series) {
  TransportFit fit;
  fit.knee_time = std::numeric_limits<double>::quiet_NaN();
  const std::size_t n = series.times.size();
  if (n < 5) {
    throw std::invalid_argument("transport_fit: need at least K >= 4 doublings");
  }
  const double tiny = 1e-300;
  bool all_zero = true;
  for (const double v : series.values) {
    if (v > tiny) all_zero = false;
    if (v < -1e-12) {
      throw std::invalid_argument("transport_fit: negative moment value");
    }
  }
  if (all_zero) {
    fit.beta_hat = 0.0;
    fit.reliable = true;
    fit.pre_knee_points = static_cast<int>(n);
    return fit;
  }

  std::vector<double> lx(n), ly(n);
  for (std::size_t k = 0; k < n; ++k) {
    lx[k] = std::log(series.times[k]);
    ly[k] = std::log(std::max(series.values[k], tiny));
  }

  // Saturation knee: first successive slope below 10% of the initial slope.
  const double s0 = (ly[1] - ly[0]) / (lx[1] - lx[0]);
  std::size_t used = n;
  if (s0 > 1e-9) {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double sk = (ly[k + 1] - ly[k]) / (lx[k + 1] - lx[k]);
      if (sk < 0.1 * s0) {
        used = k + 1;  // keep points 0..k
        fit.knee_time = series.times[k];
        break;
      }
    }
  }
  fit.pre_knee_points = static_cast<int>(used);
  fit.reliable = used >= 3;

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < used; ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  const double m = static_cast<double>(used);
  const double det = m * sxx - sx * sx;
  const double slope = det > 0.0 ? (m * sxy - sx * sy) / det : 0.0;
  const double intercept = (sy - slope * sx) / m;

  double ss = 0.0;
  for (std::size_t k = 0; k < used; ++k) {
    const double e = ly[k] - (intercept + slope * lx[k]);
    ss += e * e;
  }
  const double p = series.p;
  if (p > 0.0) {
    fit.beta_hat = slope / p;
    if (used > 2 && det > 0.0) {
      const double slope_stderr = std::sqrt(ss / (m - 2.0) / (det / m));
      fit.residual = slope_stderr / p;
    }
  } else {
    fit.beta_hat = 0.0;
    fit.residual = 0.0;
  }

  // Fitted ballistic constant over the pre-knee window.
  if (p > 0.0 && series.values[0] > tiny) {
    double c = 0.0;
    for (std::size_t k = 1; k < used; ++k) {
      const double ratio = series.values[k] / series.values[0];
      c = std::max(c, std::pow(ratio, 1.0 / p) * series.times[0] /
                          series.times[k]);
    }
    fit.ballistic_constant = c;
  }
  return fit;
}

double torus_bound_ratio(const TransportSeries& series,
                         const MagneticTorus& torus, double moment_zero) {
  const double d_max = 0.5 * torus.side() * std::sqrt(2.0);
  const double bound =
      std::pow(1.0 + d_max * d_max, 0.5 * series.p) * moment_zero;
  if (!(bound > 0.0)) {
    double vmax = 0.0;
    for (const double v : series.values) vmax = std::max(vmax, v);
    return vmax == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (const double v : series.values) worst = std::max(worst, v / bound);
  return worst;
}

}  // namespace landaulab

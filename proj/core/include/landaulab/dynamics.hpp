#pragma once

#include <string>
#include <vector>

#include "landaulab/quadrature.hpp"
#include "landaulab/spectral.hpp"

namespace landaulab {

// Smooth compactly supported energy filter
//   X(E) = exp(1 - 1/(1 - s^2)),  s = (E - center)/width, |s| < 1.
struct EnergyBump {
  double center = 0.0;
  double width = 1.0;

  double operator()(double energy) const;
};

// Moments of the filtered time evolution started from the unit cell at the
// torus center:
//   M(p, X, t) = sum_{j in cell} || W_p^{1/2} e^{-itH} X(H) delta_j ||^2 a^2,
// with W_p(x) = (1 + d(x, cell center)^2)^{p/2} in the torus metric. All
// evaluations run in the eigenbasis restricted to X(E_n) > 1e-14; the Laplace
// time average has the closed form kernel 1/(1 - i T (E_n - E_m)).
class MomentEvaluator {
 public:
  MomentEvaluator(const SpectralDecomposition& spec, const MagneticTorus& torus,
                  const EnergyBump& bump, double p);

  int window_states() const { return static_cast<int>(energies_.size()); }

  double instant(double t) const;
  double time_averaged(double T) const;  // exact kernel
  double time_averaged_quadrature(double T,
                                  const quad::LogPanelRule& rule = {}) const;

 private:
  std::vector<double> energies_;
  Matrix weight_;  // G_{mn} = X_m X_n W_{mn} S_{nm} (Hermitian), a^2 included
};

double moment_instant(const SpectralDecomposition& spec,
                      const MagneticTorus& torus, const EnergyBump& bump,
                      double p, double t);

double moment_time_averaged(const SpectralDecomposition& spec,
                            const MagneticTorus& torus, const EnergyBump& bump,
                            double p, double T);

struct TransportSeries {
  double p = 2.0;
  std::string evaluator = "exact_kernel";
  std::vector<double> times;
  std::vector<double> values;
};

TransportSeries transport_series(const SpectralDecomposition& spec,
                                 const MagneticTorus& torus,
                                 const EnergyBump& bump, double p,
                                 const std::vector<double>& times,
                                 bool use_quadrature = false);

// Slope of log M vs log T divided by p, restricted to the points before the
// saturation knee (first log-log slope below 10% of the initial slope).
// residual is the standard error of the fitted slope divided by p.
struct TransportFit {
  double beta_hat = 0.0;
  double residual = 0.0;
  bool reliable = false;
  int pre_knee_points = 0;
  double knee_time = 0.0;          // NaN when no knee was detected
  double ballistic_constant = 0.0; // fitted C in M <= M(T0) (C T/T0)^p
};

TransportFit transport_fit(const TransportSeries& series);

// Torus bound on every emitted series: M(p, X, T) <= (1 + d_max^2)^{p/2} M(0)
// with d_max the maximal minimal-image distance. Returns the largest ratio
// observed (<= 1 means the bound holds).
double torus_bound_ratio(const TransportSeries& series,
                         const MagneticTorus& torus, double moment_zero);

}  // namespace landaulab

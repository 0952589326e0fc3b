#pragma once

#include <optional>
#include <vector>

#include "landaulab/spectral.hpp"

namespace landaulab {

// Off-diagonal decay of a projection kernel: for every pair of unit cells the
// Hilbert-Schmidt norm of the block chi_x P chi_y, binned by minimal-image
// distance between the cell centers (unit-cell granularity) and reduced by
// max over pairs.
struct DecayProfile {
  std::vector<double> distance;
  std::vector<double> value;
  double fit_rate = 0.0;       // per unit cell; pure exponential form
  double fit_log_amplitude = 0.0;
  double fit_residual = 0.0;   // rms of log residuals over the fit range
  bool fit_ok = false;
  int fit_points = 0;
};

DecayProfile decay_profile(const FermiProjection& p, const MagneticTorus& torus);

// Exponential gate used as the localization verdict: the fit must be tight
// (residual below rate/3) and the decay visible across the torus (rate * L
// above a floor). Thresholds are config-exposed.
struct DecayGate {
  double residual_fraction = 1.0 / 3.0;
  double min_rate_length = 6.0;  // rate * L
};

bool passes_decay_gate(const DecayProfile& profile, const MagneticTorus& torus,
                       const DecayGate& gate = {});

// Per-eigenfunction weights alpha_n = || <x>_c^{-2} phi_n ||^2 for
// eigenvalues in a closed interval, with the torus-centered regularized
// distance <x>_c = sqrt(1 + d(x, center)^2). Their sum equals the weighted
// trace mu(I) = tr{ <x>_c^{-2} P_I <x>_c^{-2} } exactly.
struct SudecWeights {
  std::vector<int> eigenindex;
  std::vector<double> alpha;
  double mu = 0.0;        // weighted trace of the window projection
  double alpha_sum = 0.0;
};

SudecWeights sudec_weights(const SpectralDecomposition& spec, double lo,
                           double hi, const MagneticTorus& torus);

// ||chi_x phi_n|| for every unit cell; the SUDEC correlation table entries
// are products of two of these.
RealVector eigenfunction_cell_norms(const SpectralDecomposition& spec, int n,
                                    const MagneticTorus& torus);

// (sum |phi|^2)^2 / sum |phi|^4, in [1, N^2]; small means localized.
double participation_ratio(const SpectralDecomposition& spec, int n);

// Inner endpoints of the two gated edge intervals of a band: scanning the
// gate verdict over an ascending energy grid, the lower (upper) interval is
// the maximal passing prefix (suffix). Evidence for a mobility-edge location,
// not a certification.
struct ProxyIntervalPair {
  bool lower_found = false;
  bool upper_found = false;
  double lower_lo = 0.0, lower_hi = 0.0;  // [band lo, E1]
  double upper_lo = 0.0, upper_hi = 0.0;  // [E2, band hi]
};

ProxyIntervalPair proxy_intervals(const std::vector<double>& energies,
                                  const std::vector<bool>& gate_pass);

}  // namespace landaulab
